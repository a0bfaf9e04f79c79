//! The `actorkit` command line.
//!
//! Every sub-command builds a [`Report`]: a serializable record plus a plain
//! text rendering, and a success flag that decides the exit status.

mod input;
mod text;

use std::ffi::OsString;

use actorkit::{
    enumerate_split_extensions, external_weak_actor, inn_map, partial_product, permutability_check, semidirect_product,
    usga, verify_bijection, z_center_actor_check, ActorElement, Algebra, Field, Preset,
};
use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use input::{budget, load_algebra, load_phi, load_variety};

#[derive(Parser, Debug)]
#[command(
    name = "actorkit",
    version,
    about = "Actors, split extensions and acting morphisms of finite-dimensional algebras"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load algebra and/or variety files and report membership.
    Validate(ValidateArgs),
    /// External weak actor computations.
    #[command(subcommand)]
    Actor(ActorCommand),
    /// The Poisson actor [X].
    #[command(subcommand)]
    Usga(UsgaCommand),
    /// Z(X) and its comparison with [X].
    Center(AlgebraArg),
    /// Build B ⋉ X from an acting morphism file.
    Semidirect(SemidirectArgs),
    /// List the split extensions of B by X over a finite field.
    Enumerate(PairArgs),
    /// Check a theorem or criterion on concrete input.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand, Debug)]
pub enum ActorCommand {
    /// Dimension and basis of E(X).
    Compute(AlgebraVarietyArgs),
    /// The map x ↦ (x·−, −·x) into E(X).
    Inn(AlgebraVarietyArgs),
    /// The partial product of two elements of E(X).
    Product(ProductArgs),
}

#[derive(Subcommand, Debug)]
pub enum UsgaCommand {
    /// Dimension and basis of [X].
    Compute(AlgebraArg),
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// E(X) ≅ X through Inn for a unital associative or commutative associative X.
    #[command(name = "thm-assoc1")]
    ThmAssoc1(AlgebraVarietyArgs),
    /// E(X) ≅ X through Inn for a unital alternative X.
    #[command(name = "thm-alt")]
    ThmAlt(AlgebraArg),
    /// [X] ≅ Z(X) for a unital Poisson X.
    #[command(name = "thm-pois")]
    ThmPois(AlgebraArg),
    /// Split extensions of B by X against morphisms into the actor.
    Bijection(PairArgs),
    /// Permutability of every pair of basis elements of E(X).
    Eq2(AlgebraVarietyArgs),
}

#[derive(Args, Debug)]
pub struct AlgebraArg {
    /// Algebra JSON file, or the stem of a bundled example.
    #[arg(long)]
    pub algebra: String,
    /// Ground field: Q or GFp.
    #[arg(long)]
    pub field: Option<Field>,
}

#[derive(Args, Debug)]
pub struct VarietyArg {
    /// Variety JSON file or preset name.
    #[arg(long, conflicts_with = "preset")]
    pub variety: Option<String>,
    /// Preset variety: abalg, assoc, cassoc, lie, alt, pois, cpois.
    #[arg(long)]
    pub preset: Option<Preset>,
}

#[derive(Args, Debug)]
pub struct AlgebraVarietyArgs {
    #[command(flatten)]
    pub algebra: AlgebraArg,
    #[command(flatten)]
    pub variety: VarietyArg,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[arg(long)]
    pub algebra: Option<String>,
    #[arg(long)]
    pub field: Option<Field>,
    #[command(flatten)]
    pub variety: VarietyArg,
}

#[derive(Args, Debug)]
pub struct ProductArgs {
    #[command(flatten)]
    pub base: AlgebraVarietyArgs,
    /// Coordinates of f in the basis printed by `actor compute`.
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g: String,
    /// Read --f and --g as elements of X and use their inner pairs.
    #[arg(long)]
    pub inner: bool,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(long = "B")]
    pub b: String,
    #[arg(long = "X")]
    pub x: String,
    #[arg(long)]
    pub field: Option<Field>,
    #[command(flatten)]
    pub variety: VarietyArg,
    /// Maximum number of candidate tables; ACTORKIT_BUDGET takes precedence.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Args, Debug)]
pub struct SemidirectArgs {
    #[arg(long = "B")]
    pub b: String,
    #[arg(long = "X")]
    pub x: String,
    #[arg(long)]
    pub phi: String,
    #[arg(long)]
    pub field: Option<Field>,
    #[command(flatten)]
    pub variety: VarietyArg,
}

/// A finished command: rendered output and whether it counts as success.
pub struct Report {
    pub json: String,
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn new<T: Serialize>(value: &T, text: String, ok: bool) -> Result<Report> {
        Ok(Report { json: serde_json::to_string_pretty(value)?, text, ok })
    }

    pub fn render(&self, format: Format) -> &str {
        match format {
            Format::Json => &self.json,
            Format::Text => &self.text,
        }
    }
}

/// Parses `args` and runs the command. Returns the report and its exit status.
pub fn run_from<I, T>(args: I) -> std::result::Result<(String, i32), clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    Ok(match execute(&cli.command) {
        Ok(r) => (r.render(cli.format).to_string(), if r.ok { 0 } else { 1 }),
        Err(e) => (format!("error: {e:#}"), 1),
    })
}

pub fn execute(command: &Command) -> Result<Report> {
    match command {
        Command::Validate(a) => validate(a),
        Command::Actor(ActorCommand::Compute(a)) => actor_compute(a),
        Command::Actor(ActorCommand::Inn(a)) => actor_inn(a),
        Command::Actor(ActorCommand::Product(a)) => actor_product(a),
        Command::Usga(UsgaCommand::Compute(a)) => usga_compute(a),
        Command::Center(a) => center(a),
        Command::Semidirect(a) => semidirect(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Verify(VerifyCommand::ThmAssoc1(a)) => thm_unital(a, Preset::Assoc, "thm-assoc1"),
        Command::Verify(VerifyCommand::ThmAlt(a)) => thm_unital(
            &AlgebraVarietyArgs {
                algebra: AlgebraArg { algebra: a.algebra.clone(), field: a.field },
                variety: VarietyArg { variety: None, preset: Some(Preset::Alt) },
            },
            Preset::Alt,
            "thm-alt",
        ),
        Command::Verify(VerifyCommand::ThmPois(a)) => thm_pois(a),
        Command::Verify(VerifyCommand::Bijection(a)) => bijection(a),
        Command::Verify(VerifyCommand::Eq2(a)) => eq2(a),
    }
}

fn algebra(a: &AlgebraArg) -> Result<Algebra> {
    load_algebra(&a.algebra, a.field)
}

fn variety(v: &VarietyArg, default: Option<Preset>) -> Result<actorkit::Variety> {
    load_variety(v.variety.as_deref(), v.preset, default)
}

#[derive(Serialize)]
struct AlgebraSummary {
    name: String,
    field: Field,
    dim: usize,
    products: Vec<String>,
    unit: Option<Vec<String>>,
    presets: Vec<&'static str>,
}

#[derive(Serialize)]
struct Membership {
    variety: String,
    member: bool,
    violation: Option<Violation>,
}

#[derive(Serialize)]
struct Violation {
    identity: String,
    tuple: Vec<usize>,
}

#[derive(Serialize)]
struct ValidateReport {
    algebra: Option<AlgebraSummary>,
    variety: Option<actorkit::variety::VarietyFile>,
    membership: Option<Membership>,
}

fn applicable(v: &actorkit::Variety, a: &Algebra) -> bool {
    v.num_products() == a.num_products() && v.check_characteristic(a.field()).is_ok()
}

fn membership(v: &actorkit::Variety, a: &Algebra) -> Result<Membership> {
    if v.num_products() != a.num_products() {
        bail!("{} has {} product(s) but {} has {}", a.name(), a.num_products(), v.name(), v.num_products());
    }
    v.check_characteristic(a.field())?;
    let violation =
        v.first_violation(a)?.map(|(i, tuple)| Violation { identity: v.identities()[i].to_string(), tuple });
    Ok(Membership { variety: v.name().to_string(), member: violation.is_none(), violation })
}

fn validate(args: &ValidateArgs) -> Result<Report> {
    if args.algebra.is_none() && args.variety.variety.is_none() && args.variety.preset.is_none() {
        bail!("nothing to validate: pass --algebra and/or --variety");
    }
    let a = args.algebra.as_deref().map(|s| load_algebra(s, args.field)).transpose()?;
    let v = if args.variety.variety.is_some() || args.variety.preset.is_some() {
        Some(variety(&args.variety, None)?)
    } else {
        None
    };
    let summary = a.as_ref().map(|a| -> Result<AlgebraSummary> {
        let mut presets = Vec::new();
        for p in Preset::ALL {
            let pv = actorkit::Variety::preset(p);
            if applicable(&pv, a) && pv.contains(a)? {
                presets.push(p.name());
            }
        }
        Ok(AlgebraSummary {
            name: a.name().to_string(),
            field: a.field(),
            dim: a.dim(),
            products: a.product_names().iter().map(|s| s.to_string()).collect(),
            unit: a.find_unit().map(|e| e.iter().map(ToString::to_string).collect()),
            presets,
        })
    });
    let summary = summary.transpose()?;
    let m = match (&a, &v) {
        (Some(a), Some(v)) => Some(membership(v, a)?),
        _ => None,
    };
    let ok = m.as_ref().is_none_or(|m| m.member);
    let report = ValidateReport { algebra: summary, variety: v.as_ref().map(|v| v.to_file()), membership: m };
    let text = text::validate(&report);
    Report::new(&report, text, ok)
}

fn actor_compute(args: &AlgebraVarietyArgs) -> Result<Report> {
    let a = algebra(&args.algebra)?;
    let v = variety(&args.variety, None)?;
    let s = external_weak_actor(&a, &v)?;
    let export = s.export();
    let text = text::actor(&export);
    Report::new(&export, text, true)
}

#[derive(Serialize)]
struct InnOutput {
    algebra: String,
    variety: String,
    #[serde(flatten)]
    inn: actorkit::InnReport,
}

fn actor_inn(args: &AlgebraVarietyArgs) -> Result<Report> {
    let a = algebra(&args.algebra)?;
    let v = variety(&args.variety, None)?;
    let s = external_weak_actor(&a, &v)?;
    let out = InnOutput { algebra: a.name().to_string(), variety: v.name().to_string(), inn: inn_map(&a, &s)? };
    let text = text::inn(&out.algebra, &out.variety, &out.inn);
    Report::new(&out, text, true)
}

#[derive(Serialize)]
struct ProductOutput {
    algebra: String,
    variety: String,
    f: ActorElement,
    g: ActorElement,
    defined: bool,
    product: Option<ActorElement>,
    coordinates: Option<Vec<String>>,
}

fn actor_product(args: &ProductArgs) -> Result<Report> {
    let a = algebra(&args.base.algebra)?;
    let v = variety(&args.base.variety, None)?;
    let s = external_weak_actor(&a, &v)?;
    let field = a.field();
    let pick = |src: &str| -> Result<ActorElement> {
        if args.inner {
            Ok(ActorElement::inner(&a, &input::parse_vector(src, field, a.dim())?))
        } else {
            Ok(s.element(&input::parse_vector(src, field, s.dim())?))
        }
    };
    let (f, g) = (pick(&args.f)?, pick(&args.g)?);
    let h = partial_product(&s, &f, &g)?;
    let coordinates = h.as_ref().and_then(|h| s.coordinates(h)).map(|c| c.iter().map(ToString::to_string).collect());
    let out = ProductOutput {
        algebra: a.name().to_string(),
        variety: v.name().to_string(),
        f,
        g,
        defined: h.is_some(),
        product: h,
        coordinates,
    };
    let text = text::product(&out.f, &out.g, out.product.as_ref(), out.coordinates.as_deref());
    Report::new(&out, text, true)
}

fn usga_compute(args: &AlgebraArg) -> Result<Report> {
    let a = algebra(args)?;
    let export = usga(&a)?.export();
    let text = text::usga(&export);
    Report::new(&export, text, true)
}

#[derive(Serialize)]
struct CenterOutput {
    algebra: String,
    center_basis: Vec<Vec<String>>,
    #[serde(flatten)]
    report: actorkit::CenterReport,
}

fn center(args: &AlgebraArg) -> Result<Report> {
    let a = algebra(args)?;
    let out = CenterOutput {
        algebra: a.name().to_string(),
        center_basis: a.lie_center(1)?.to_strings(),
        report: z_center_actor_check(&a)?,
    };
    let text = text::center(&out.algebra, &out.center_basis, &out.report);
    Report::new(&out, text, true)
}

#[derive(Serialize)]
struct SemidirectOutput {
    variety: String,
    in_variety: bool,
    extension: actorkit::extension::ExtensionExport,
}

fn semidirect(args: &SemidirectArgs) -> Result<Report> {
    let b = load_algebra(&args.b, args.field)?;
    let x = load_algebra(&args.x, args.field)?;
    let v = variety(&args.variety, None)?;
    let phi = load_phi(&args.phi, &b, &x)?;
    let e = semidirect_product(&b, &x, &phi, &v)?;
    let out = SemidirectOutput { variety: v.name().to_string(), in_variety: v.contains(e.a())?, extension: e.export() };
    let text = text::semidirect(&out.variety, out.in_variety, e.a());
    Report::new(&out, text, out.in_variety)
}

#[derive(Serialize)]
struct EnumerateOutput {
    b: String,
    x: String,
    variety: String,
    field: Field,
    count: usize,
    extensions: Vec<actorkit::extension::ExtensionExport>,
}

fn enumerate(args: &PairArgs) -> Result<Report> {
    let b = load_algebra(&args.b, args.field)?;
    let x = load_algebra(&args.x, args.field)?;
    let v = variety(&args.variety, None)?;
    let list = enumerate_split_extensions(&b, &x, &v, budget(args.budget)?)?;
    let out = EnumerateOutput {
        b: b.name().to_string(),
        x: x.name().to_string(),
        variety: v.name().to_string(),
        field: x.field(),
        count: list.len(),
        extensions: list.iter().map(|e| e.export()).collect(),
    };
    let text = text::enumerate(&out.b, &out.x, &out.variety, &list);
    Report::new(&out, text, true)
}

#[derive(Serialize)]
struct TheoremOutput {
    theorem: &'static str,
    algebra: String,
    variety: String,
    field: Field,
    unital: bool,
    algebra_dim: usize,
    actor_dim: usize,
    inn_bijective: bool,
    nonassociativity_witness: Option<Vec<usize>>,
    pass: bool,
}

fn thm_unital(args: &AlgebraVarietyArgs, default: Preset, theorem: &'static str) -> Result<Report> {
    let a = algebra(&args.algebra)?;
    let v = variety(&args.variety, Some(default))?;
    if theorem == "thm-assoc1" && !matches!(v.preset_kind(), Some(Preset::Assoc | Preset::CAssoc)) {
        bail!("thm-assoc1 applies to the assoc and cassoc presets, not {}", v.name());
    }
    let s = external_weak_actor(&a, &v)?;
    let inn = inn_map(&a, &s)?;
    let unital = a.find_unit().is_some();
    let nonassociativity_witness = if default == Preset::Alt {
        actorkit::Variety::preset(Preset::Assoc).first_violation(&a)?.map(|(_, t)| t)
    } else {
        None
    };
    let pass = unital && s.dim() == a.dim() && inn.bijective;
    let out = TheoremOutput {
        theorem,
        algebra: a.name().to_string(),
        variety: v.name().to_string(),
        field: a.field(),
        unital,
        algebra_dim: a.dim(),
        actor_dim: s.dim(),
        inn_bijective: inn.bijective,
        nonassociativity_witness,
        pass,
    };
    let text = text::theorem(
        theorem,
        &[
            ("algebra", out.algebra.clone()),
            ("variety", out.variety.clone()),
            ("field", out.field.to_string()),
            ("unital", out.unital.to_string()),
            ("dim X", out.algebra_dim.to_string()),
            ("dim E(X)", out.actor_dim.to_string()),
            ("Inn bijective", out.inn_bijective.to_string()),
        ],
        pass,
    );
    Report::new(&out, text, pass)
}

#[derive(Serialize)]
struct PoisOutput {
    theorem: &'static str,
    algebra: String,
    field: Field,
    #[serde(flatten)]
    report: actorkit::CenterReport,
}

fn thm_pois(args: &AlgebraArg) -> Result<Report> {
    let a = algebra(args)?;
    let r = z_center_actor_check(&a)?;
    let text = text::theorem(
        "thm-pois",
        &[
            ("algebra", a.name().to_string()),
            ("field", a.field().to_string()),
            ("dim X", r.algebra_dim.to_string()),
            ("dim Z(X)", r.center_dim.to_string()),
            ("dim [X]", r.usga_dim.to_string()),
            ("unit in Z(X)", r.unit_in_center.to_string()),
            ("Z(X) closed", r.center_closed.to_string()),
            ("bracket trivial on Z(X)", r.center_bracket_trivial.to_string()),
            ("D-components vanish", r.der_components_vanish.to_string()),
            ("Z(X) → [X] bijective", r.bijective.to_string()),
            ("X → [X] bijective", r.inner_bijective.to_string()),
        ],
        r.pass,
    );
    let pass = r.pass;
    let out = PoisOutput { theorem: "thm-pois", algebra: a.name().to_string(), field: a.field(), report: r };
    Report::new(&out, text, pass)
}

#[derive(Serialize)]
struct BijectionOutput {
    b: String,
    x: String,
    variety: String,
    field: Field,
    #[serde(flatten)]
    report: actorkit::BijectionReport,
}

fn bijection(args: &PairArgs) -> Result<Report> {
    let b = load_algebra(&args.b, args.field)?;
    let x = load_algebra(&args.x, args.field)?;
    let v = variety(&args.variety, None)?;
    let r = verify_bijection(&b, &x, &v, budget(args.budget)?)?;
    let mut rows = vec![
        ("B", b.name().to_string()),
        ("X", x.name().to_string()),
        ("variety", v.name().to_string()),
        ("field", x.field().to_string()),
        ("split extensions", r.split_extensions.to_string()),
        ("acting morphisms", r.acting_morphisms.to_string()),
    ];
    if let Some(w) = &r.witness {
        rows.push(("witness", w.clone()));
    }
    let text = text::theorem("bijection", &rows, r.matches);
    let pass = r.matches;
    let out = BijectionOutput {
        b: b.name().to_string(),
        x: x.name().to_string(),
        variety: v.name().to_string(),
        field: x.field(),
        report: r,
    };
    Report::new(&out, text, pass)
}

#[derive(Serialize)]
struct Eq2Violation {
    f: usize,
    g: usize,
    x: usize,
    lhs: Vec<String>,
    rhs: Vec<String>,
}

#[derive(Serialize)]
struct Eq2Output {
    algebra: String,
    variety: String,
    actor_dim: usize,
    pairs_checked: usize,
    violation: Option<Eq2Violation>,
    pass: bool,
}

/// First basis pair (f, g) of E(X) and basis vector x with (f∗x)∗g ≠ f∗(x∗g).
fn eq2_violation(basis: &[ActorElement]) -> Option<Eq2Violation> {
    for (i, f) in basis.iter().enumerate() {
        for (j, g) in basis.iter().enumerate() {
            if permutability_check(f, g) {
                continue;
            }
            let lhs = &g.right * &f.left;
            let rhs = &f.left * &g.right;
            let x = (0..lhs.cols()).find(|&c| lhs.column(c) != rhs.column(c)).expect("matrices differ");
            let show = |v: Vec<actorkit::Scalar>| v.iter().map(ToString::to_string).collect();
            return Some(Eq2Violation { f: i, g: j, x, lhs: show(lhs.column(x)), rhs: show(rhs.column(x)) });
        }
    }
    None
}

fn eq2(args: &AlgebraVarietyArgs) -> Result<Report> {
    let a = algebra(&args.algebra)?;
    let v = variety(&args.variety, Some(Preset::Assoc))?;
    let s = external_weak_actor(&a, &v)?;
    let basis = s.basis();
    let violation = eq2_violation(&basis);
    let out = Eq2Output {
        algebra: a.name().to_string(),
        variety: v.name().to_string(),
        actor_dim: s.dim(),
        pairs_checked: basis.len() * basis.len(),
        pass: violation.is_none(),
        violation,
    };
    let mut rows = vec![
        ("algebra", out.algebra.clone()),
        ("variety", out.variety.clone()),
        ("dim E(X)", out.actor_dim.to_string()),
        ("pairs checked", out.pairs_checked.to_string()),
    ];
    if let Some(w) = &out.violation {
        rows.push((
            "violation",
            format!(
                "f = e{}, g = e{}, x = x{}: (f*x)*g = [{}], f*(x*g) = [{}]",
                w.f,
                w.g,
                w.x,
                w.lhs.join(", "),
                w.rhs.join(", ")
            ),
        ));
    }
    let text = text::theorem("eq2", &rows, out.pass);
    Report::new(&out, text, out.pass)
}
