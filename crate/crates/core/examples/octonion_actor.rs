use std::time::Instant;

use actorkit::{catalog, external_weak_actor, inn_map, Field, Preset, Variety};

fn main() {
    let o = catalog::octonions(Field::Rational);
    let t = Instant::now();
    let s = external_weak_actor(&o, &Variety::preset(Preset::Alt)).expect("octonions are alternative");
    let r = inn_map(&o, &s).expect("inner pairs lie in the actor");
    println!("dim E(X) = {}, Inn bijective = {}, {:?}", s.dim(), r.bijective, t.elapsed());
}
