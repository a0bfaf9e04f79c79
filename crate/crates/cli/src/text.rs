use std::fmt::Write;

use actorkit::actor::ActorExport;
use actorkit::extension::SplitExtensionData;
use actorkit::poisson::PoissonActorExport;
use actorkit::{ActorElement, Algebra, CenterReport, InnReport, Matrix};

use crate::ValidateReport;

fn matrix_lines(out: &mut String, label: &str, m: &Matrix) {
    let cells = m.to_strings();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    for (r, row) in cells.iter().enumerate() {
        let lead = if r == 0 { label } else { "" };
        let body: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "    {lead:<6}[{}]", body.join(" "));
    }
}

fn pair(out: &mut String, e: &ActorElement) {
    matrix_lines(out, "L", &e.left);
    matrix_lines(out, "R", &e.right);
}

fn table(title: &str, rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = format!("{title}\n");
    for (k, v) in rows {
        let pad = width - k.chars().count();
        let _ = writeln!(out, "  {k}{}  {v}", " ".repeat(pad));
    }
    out
}

pub fn validate(r: &ValidateReport) -> String {
    let mut out = String::new();
    if let Some(a) = &r.algebra {
        let unit = a.unit.as_ref().map_or("none".to_string(), |u| format!("[{}]", u.join(", ")));
        out += &table(
            &format!("algebra {}", a.name),
            &[
                ("field", a.field.to_string()),
                ("dim", a.dim.to_string()),
                ("products", a.products.join(", ")),
                ("unit", unit),
                ("presets", if a.presets.is_empty() { "none".into() } else { a.presets.join(", ") }),
            ],
        );
    }
    if let Some(v) = &r.variety {
        let _ = writeln!(out, "variety {} ({} product(s))", v.name, v.products);
        for id in &v.identities {
            let _ = writeln!(out, "  {id} = 0");
        }
    }
    if let Some(m) = &r.membership {
        match &m.violation {
            None => {
                let _ = writeln!(out, "member of {}: yes", m.variety);
            }
            Some(w) => {
                let _ = writeln!(out, "member of {}: no, {} = 0 fails at {:?}", m.variety, w.identity, w.tuple);
            }
        }
    }
    out
}

pub fn actor(e: &ActorExport) -> String {
    let mut out = format!(
        "E(X) for {} in {} over {}\n  dim X = {}\n  dim E(X) = {}\n",
        e.algebra, e.variety, e.field, e.algebra_dim, e.dim
    );
    for (i, b) in e.basis.iter().enumerate() {
        let _ = writeln!(out, "  e{i}");
        pair(&mut out, b);
    }
    out
}

pub fn inn(algebra: &str, variety: &str, r: &InnReport) -> String {
    let mut rows = vec![
        ("dim X", r.algebra_dim.to_string()),
        ("dim E(X)", r.actor_dim.to_string()),
        ("rank", r.rank.to_string()),
        ("injective", r.injective.to_string()),
        ("surjective", r.surjective.to_string()),
        ("bijective", r.bijective.to_string()),
    ];
    if !r.kernel.is_empty() {
        let k: Vec<String> = r.kernel.iter().map(|v| format!("[{}]", v.join(", "))).collect();
        rows.push(("kernel", k.join(" ")));
    }
    table(&format!("Inn: {algebra} -> E(X) in {variety}"), &rows)
}

pub fn product(f: &ActorElement, g: &ActorElement, h: Option<&ActorElement>, coords: Option<&[String]>) -> String {
    let mut out = String::from("f\n");
    pair(&mut out, f);
    out += "g\n";
    pair(&mut out, g);
    match (h, coords) {
        (Some(h), Some(c)) => {
            let _ = writeln!(out, "<f, g> = [{}]", c.join(", "));
            pair(&mut out, h);
        }
        _ => out += "<f, g> undefined\n",
    }
    out
}

pub fn usga(e: &PoissonActorExport) -> String {
    let mut out =
        format!("[X] for {} over {}\n  dim X = {}\n  dim [X] = {}\n", e.algebra, e.field, e.algebra_dim, e.dim);
    for (i, b) in e.basis.iter().enumerate() {
        let _ = writeln!(out, "  e{i}");
        matrix_lines(&mut out, "L", &b.left);
        matrix_lines(&mut out, "R", &b.right);
        matrix_lines(&mut out, "D", &b.der);
    }
    out
}

pub fn center(algebra: &str, basis: &[Vec<String>], r: &CenterReport) -> String {
    let z: Vec<String> = basis.iter().map(|v| format!("[{}]", v.join(", "))).collect();
    table(
        &format!("Z(X) for {algebra}"),
        &[
            ("dim X", r.algebra_dim.to_string()),
            ("dim Z(X)", r.center_dim.to_string()),
            ("basis", if z.is_empty() { "none".into() } else { z.join(" ") }),
            ("dim [X]", r.usga_dim.to_string()),
            ("Z(X) -> [X] bijective", r.bijective.to_string()),
            ("X -> [X] bijective", r.inner_bijective.to_string()),
        ],
    )
}

fn algebra_table(out: &mut String, a: &Algebra) {
    let names = a.basis_names();
    for (p, pname) in a.product_names().iter().enumerate() {
        let _ = writeln!(out, "  product {pname}");
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let terms: Vec<String> = a
                    .basis_product(p, i, j)
                    .iter()
                    .zip(names)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, n)| if c.is_one() { n.clone() } else { format!("{c} {n}") })
                    .collect();
                if !terms.is_empty() {
                    let _ = writeln!(out, "    {} {} = {}", names[i], names[j], terms.join(" + "));
                }
            }
        }
    }
}

pub fn semidirect(variety: &str, ok: bool, a: &Algebra) -> String {
    let mut out = format!("{} (dim {}) in {variety}: {}\n", a.name(), a.dim(), if ok { "yes" } else { "no" });
    algebra_table(&mut out, a);
    out
}

pub fn enumerate(b: &str, x: &str, variety: &str, list: &[SplitExtensionData]) -> String {
    let mut out = format!("split extensions of {b} by {x} in {variety}: {}\n", list.len());
    for (i, e) in list.iter().enumerate() {
        let _ = writeln!(out, "extension {i}");
        algebra_table(&mut out, e.a());
    }
    out
}

pub fn theorem(name: &str, rows: &[(&str, String)], pass: bool) -> String {
    let mut out = table(name, rows);
    out += if pass { "PASS\n" } else { "FAIL\n" };
    out
}
