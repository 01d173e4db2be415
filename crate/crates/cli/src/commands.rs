use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use pdchain::chain::{check_coassociative, check_cocommutative, is_chain_map, validate_reduced, ReducedComplex};
use pdchain::corpus::standard_documents;
use pdchain::crossed::{build_pt, pt_homology, CrossedError};
use pdchain::document::{encode_matrix, ComplexDocument, DocumentError};
use pdchain::poincare::{
    check_weakly_standard, construct_degree_one, degree_of_map, lower_map, verify_pd, PDChainComplex, Report, WeaklyStandardData,
};
use pdchain::quadratic::{gamma_group, FGAbelian};
use pdchain::triples::{
    degree_one_exists, obstruction_targets, triple_pd3, triple_pd4, triples_isomorphic, FundamentalTriple, TriplesError,
};
use pdchain::{AbelianGroup, GroupHom, GroupRingElement};

use crate::report::{Input, RunReport, Verdict};
use crate::{Command, InputError, Limits, ResourceBound};

struct Loaded {
    input: Input,
    doc: ComplexDocument,
}

fn load(path: &Path) -> Result<Loaded> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| InputError(format!("{} is not UTF-8", path.display())))?;
    let doc = ComplexDocument::from_json(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok(Loaded { input: Input::new(&path.display().to_string(), &bytes), doc })
}

fn input<T>(r: Result<T, DocumentError>) -> Result<T> {
    r.map_err(|e| InputError(e.to_string()).into())
}

fn within(limits: Limits, c: &ReducedComplex) -> Result<()> {
    if c.group().order() > limits.group_order {
        bail!(ResourceBound(format!("group order {} > {}", c.group().order(), limits.group_order)));
    }
    let total: usize = c.ranks().iter().sum();
    if total > limits.rank {
        bail!(ResourceBound(format!("{total} cells > {}", limits.rank)));
    }
    Ok(())
}

fn complex(l: &Loaded, limits: Limits) -> Result<ReducedComplex> {
    let c = input(l.doc.complex())?;
    within(limits, &c)?;
    Ok(c)
}

fn pd(l: &Loaded, limits: Limits) -> Result<PDChainComplex> {
    complex(l, limits)?;
    input(l.doc.pd())
}

fn triples_error(e: TriplesError) -> anyhow::Error {
    match e {
        TriplesError::Bound(_) | TriplesError::Crossed(CrossedError::EnumerationBound(_)) => ResourceBound(e.to_string()).into(),
        TriplesError::Dimension(_) | TriplesError::Mismatch(_) | TriplesError::Unsupported(_) => InputError(e.to_string()).into(),
        other => other.into(),
    }
}

fn crossed_error(e: CrossedError) -> anyhow::Error {
    match e {
        CrossedError::EnumerationBound(_) => ResourceBound(e.to_string()).into(),
        other => InputError(other.to_string()).into(),
    }
}

fn copy_checks(report: &mut RunReport, r: &Report) {
    for c in &r.checks {
        report.check(c.name, c.passed, c.detail.clone());
    }
}

pub fn run(command: &Command, limits: Limits) -> Result<RunReport> {
    let report = match command {
        Command::Homology { file } => homology(file, limits)?,
        Command::VerifyPd { file } => verify(file, limits)?,
        Command::Triple { file } => triple(file, limits)?,
        Command::Compare { first, second } => compare(first, second, limits)?,
        Command::DegreeOne { source, target, images } => degree_one(source, target, images.as_deref(), limits)?,
        Command::PtChain { file } => pt_chain(file, limits)?,
        Command::Diagonal { file } => diagonal(file, limits)?,
        Command::ObstructionTargets { file } => obstruction(file, limits)?,
        Command::Roundtrip { file } => roundtrip(file)?,
        Command::Corpus { dir, check } => corpus(dir, *check)?,
    };
    Ok(report.settle())
}

fn homology(file: &Path, limits: Limits) -> Result<RunReport> {
    let l = load(file)?;
    let c = complex(&l, limits)?;
    let omega = input(l.doc.omega(c.group()))?;
    let mut r = RunReport::new("homology");
    r.inputs.push(l.input);
    for k in 0..=c.top() {
        r.group(format!("H{k}(Lambda)"), c.homology(k)?);
        r.group(format!("H{k}(Z^w)"), c.twisted_homology(k, &omega)?);
    }
    Ok(r)
}

fn verify(file: &Path, limits: Limits) -> Result<RunReport> {
    let l = load(file)?;
    let mut r = RunReport::new("verify-pd");
    r.inputs.push(l.input);
    let c = match l.doc.complex() {
        Ok(c) => c,
        Err(DocumentError::Invalid { path, message }) if path.starts_with("boundaries") => {
            r.check("complex", false, format!("{path}: {message}"));
            return Ok(r);
        }
        Err(e) => bail!(InputError(e.to_string())),
    };
    within(limits, &c)?;
    let failures = validate_reduced(&c);
    if !failures.passed() {
        let (k, msg) = &failures.failures[0];
        r.check("complex", false, format!("degree {k}: {msg}"));
        return Ok(r);
    }
    input(l.doc.omega(c.group()))?;
    let x = match l.doc.pd() {
        Ok(x) => x,
        Err(DocumentError::Invalid { path, message }) if path == "diagonal" => {
            r.check("complex", true, "");
            r.check("diagonal", false, message);
            return Ok(r);
        }
        Err(e) => bail!(InputError(e.to_string())),
    };
    copy_checks(&mut r, &verify_pd(&x));
    if let Some(w) = input(l.doc.weakly_standard(&x.complex))? {
        copy_checks(&mut r, &check_weakly_standard(&x, &w));
    }
    Ok(r)
}

fn triple_of(l: &Loaded, limits: Limits) -> Result<FundamentalTriple> {
    let x = pd(l, limits)?;
    match x.formal_dim {
        3 => triple_pd3(&x).map_err(triples_error),
        4 => {
            let m = input(l.doc.precrossed())?.ok_or_else(|| InputError("a 4-dimensional triple needs precrossed data".into()))?;
            triple_pd4(&x, &m).map_err(triples_error)
        }
        n => bail!(InputError(format!("no triples in formal dimension {n}"))),
    }
}

fn class_string(t: &FundamentalTriple) -> String {
    let parts: Vec<String> = t.class.iter().map(BigInt::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn triple(file: &Path, limits: Limits) -> Result<RunReport> {
    let l = load(file)?;
    let t = triple_of(&l, limits)?;
    let mut r = RunReport::new("triple");
    r.inputs.push(l.input);
    r.value("formal_dim", t.formal_dim);
    r.value("group_order", t.group.order());
    r.value("orientation", t.omega.values());
    r.group(format!("H{}(T; Z^w)", t.formal_dim), t.homology_group().invariants());
    r.value("t", class_string(&t));
    if limits.witnesses {
        r.witness("cycle", t.cycle.iter().map(BigInt::to_string).collect::<Vec<_>>());
    }
    Ok(r)
}

fn images(phi: &GroupHom) -> Vec<usize> {
    phi.source().generating_set().iter().map(|&g| phi.apply(g)).collect()
}

fn compare(first: &Path, second: &Path, limits: Limits) -> Result<RunReport> {
    let (a, b) = (load(first)?, load(second)?);
    let (ta, tb) = (triple_of(&a, limits)?, triple_of(&b, limits)?);
    let mut r = RunReport::new("compare");
    r.inputs.push(a.input);
    r.inputs.push(b.input);
    match triples_isomorphic(&ta, &tb).map_err(triples_error)? {
        Some(phi) => {
            r.value("isomorphic", true);
            r.value("generator_images", images(&phi));
        }
        None => {
            r.value("isomorphic", false);
            r.verdict = Verdict::Negative;
        }
    }
    Ok(r)
}

fn default_hom(y: &PDChainComplex, x: &PDChainComplex, given: Option<&[usize]>) -> Result<GroupHom> {
    let (gy, gx) = (y.complex.group(), x.complex.group());
    if let Some(imgs) = given {
        let gens = gy.generating_set();
        if imgs.len() != gens.len() || imgs.iter().any(|&i| i >= gx.order()) {
            bail!(InputError(format!("need {} generator images below {}", gens.len(), gx.order())));
        }
        return GroupHom::extend_from_generators(gy, gx, &gens, imgs)
            .ok_or_else(|| InputError("generator images do not define a homomorphism".into()).into());
    }
    if gx.is_trivial() {
        Ok(GroupHom::collapse(gy, gx))
    } else if **gx == **gy {
        Ok(GroupHom::identity(gy))
    } else {
        bail!(InputError("groups differ; pass --images".into()))
    }
}

fn degree_one(source: &Path, target: &Path, given: Option<&[usize]>, limits: Limits) -> Result<RunReport> {
    let (ly, lx) = (load(source)?, load(target)?);
    let (y, x) = (pd(&ly, limits)?, pd(&lx, limits)?);
    let mut r = RunReport::new("degree-one");
    r.inputs.push(ly.input.clone());
    r.inputs.push(lx.input.clone());
    if y.formal_dim != x.formal_dim {
        bail!(InputError("formal dimensions differ".into()));
    }
    let phi = default_hom(&y, &x, given)?;
    r.value("generator_images", images(&phi));
    r.check("surjective on pi1", phi.is_surjective(), "");
    r.check("orientations agree", x.omega.pull_back(&phi) == y.omega, "");
    if x.formal_dim == 3 {
        let (ty, tx) = (triple_of(&ly, limits)?, triple_of(&lx, limits)?);
        let exists = degree_one_exists(&ty, &tx, &phi).map_err(triples_error)?;
        r.check("phi_* t_Y = t_X", exists, if exists { String::new() } else { format!("{} vs {}", class_string(&ty), class_string(&tx)) });
        if phi.is_surjective() && x.omega.pull_back(&phi) == y.omega {
            chain_level(&mut r, &ly, &lx, &y, &x, &phi, limits)?;
        }
    }
    Ok(r)
}

fn chain_level(
    r: &mut RunReport,
    ly: &Loaded,
    lx: &Loaded,
    y: &PDChainComplex,
    x: &PDChainComplex,
    phi: &GroupHom,
    limits: Limits,
) -> Result<()> {
    let n = x.formal_dim;
    let wy = input(ly.doc.weakly_standard(&y.complex))?.unwrap_or_else(|| WeaklyStandardData::last_cell(&y.complex, n));
    let wx = input(lx.doc.weakly_standard(&x.complex))?.unwrap_or_else(|| WeaklyStandardData::last_cell(&x.complex, n));
    let Some(lower) = lower_map(y, x, phi, n as i64 - 2)? else {
        r.check("chain-level construction", false, "no lower map");
        return Ok(());
    };
    match construct_degree_one(y, &wy, x, &wx, phi, &lower)? {
        Ok(f) => {
            let verified = is_chain_map(&f);
            let degree = degree_of_map(&f, y, x)?;
            r.check("chain-level construction", verified && degree == BigInt::from(1), format!("degree {degree}"));
            if limits.witnesses {
                for k in 0..=n as i64 {
                    r.witness(&format!("F{k}"), encode_matrix(&f.component(k), "witness")?);
                }
            }
        }
        Err(step) => r.check("chain-level construction", false, step.to_string()),
    }
    Ok(())
}

fn as_fg(a: &AbelianGroup) -> Result<FGAbelian> {
    let mut orders = a.torsion.clone();
    orders.extend(std::iter::repeat_n(BigInt::from(0), a.free_rank));
    Ok(FGAbelian::new(orders)?)
}

fn pt_chain(file: &Path, limits: Limits) -> Result<RunReport> {
    let l = load(file)?;
    let c = complex(&l, limits)?;
    let m = input(l.doc.precrossed())?.ok_or_else(|| InputError("pt-chain needs precrossed data".into()))?;
    let fox = m.fox_boundary(pdchain::crossed::DEFAULT_COSET_BOUND).map_err(crossed_error)?;
    if fox.pi1.group.order() != c.group().order() || fox.d2.module_map_to_int() != c.int_boundary(2) {
        bail!(InputError("precrossed data does not match the 2-skeleton".into()));
    }
    let g = fox.pi1.group.clone();
    let b: Vec<Vec<GroupRingElement>> =
        (0..c.rank(3)).map(|j| c.boundary(3).column(j).iter().map(|e| e.with_group(&g)).collect()).collect();
    let mut r = RunReport::new("pt-chain");
    r.inputs.push(l.input.clone());
    let pt = match build_pt(&m, &b) {
        Ok(pt) => pt,
        Err(CrossedError::Pattern(msg)) => {
            r.check("homology pattern", false, msg);
            return Ok(r);
        }
        Err(e) => return Err(crossed_error(e)),
    };
    let omega = input(l.doc.omega(c.group()))?;
    let omega = pdchain::OrientationChar::new(g.clone(), omega.values().to_vec())?;
    let h = pt_homology(&pt, &omega).map_err(crossed_error)?;
    r.check("homology pattern", true, "H1 = H3 = 0, H2 = pi2, H4 = Gamma(pi2)");
    r.group("pi2", &pt.pi2);
    r.group("Gamma(pi2)", gamma_group(&as_fg(&pt.pi2)?).group.invariants());
    for k in 3..=4 {
        r.group(format!("P{k}"), pt.complex.module(k).abelian());
    }
    for (k, g) in h {
        r.group(format!("H{k}(T; Z^w)"), g);
    }
    Ok(r)
}

fn diagonal(file: &Path, limits: Limits) -> Result<RunReport> {
    let l = load(file)?;
    let c = Arc::new(complex(&l, limits)?);
    let mut r = RunReport::new("diagonal");
    r.inputs.push(l.input);
    let d = match l.doc.diagonal(&c) {
        Ok(d) => d,
        Err(e) => {
            r.check("diagonal", false, e.to_string());
            return Ok(r);
        }
    };
    r.check("diagonal", is_chain_map(&d.map), if d.is_strict() { "strict counits" } else { "counits up to homotopy" });
    let cocommutative = check_cocommutative(&d)?;
    r.check("homotopy cocommutative", cocommutative.is_some(), "");
    let coassociative = check_coassociative(&d)?;
    r.value("homotopy coassociative", coassociative.is_some());
    if limits.witnesses {
        for k in 0..=c.top() {
            r.witness(&format!("Delta{k}"), encode_matrix(&d.map.component(k), "witness")?);
        }
    }
    Ok(r)
}

fn obstruction(file: &Path, limits: Limits) -> Result<RunReport> {
    let l = load(file)?;
    let c = complex(&l, limits)?;
    let omega = input(l.doc.omega(c.group()))?;
    let t = obstruction_targets(&c, &omega).map_err(triples_error)?;
    let mut r = RunReport::new("obstruction-targets");
    r.inputs.push(l.input);
    r.group("H2(C; Lambda)", &t.h2);
    r.group("H0(pi; Lambda2 H2^w)", &t.lambda2_coinvariants);
    r.group("Tate H0(pi; Lambda2 H2^w)", &t.lambda2_tate);
    r.group("ker H", &t.ker_h);
    r.value("odd order", t.odd_order);
    r.check("ker H is 2-torsion", t.ker_h_is_two_torsion(), t.ker_h.to_string());
    r.check("odd exponents for odd order", t.odd_exponents(), "");
    Ok(r)
}

fn roundtrip(file: &Path) -> Result<RunReport> {
    let bytes = fs::read(file).with_context(|| format!("reading {}", file.display()))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| InputError("not UTF-8".into()))?;
    let doc = ComplexDocument::from_json(&text).map_err(|e| InputError(e.to_string()))?;
    let mut r = RunReport::new("roundtrip");
    r.inputs.push(Input::new(&file.display().to_string(), &bytes));
    let same = doc.to_json() == text;
    r.check("canonical", same, if same { "" } else { "serialize(parse(file)) differs from the file" });
    Ok(r)
}

fn corpus(dir: &Path, check: bool) -> Result<RunReport> {
    let docs = standard_documents().map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut r = RunReport::new("corpus");
    for (rel, doc) in docs {
        let path = dir.join(&rel);
        let text = doc.to_json();
        if check {
            let same = fs::read_to_string(&path).is_ok_and(|t| t == text);
            r.check(&rel, same, if same { "" } else { "differs from the generated document" });
        } else {
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent)?;
            }
            fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
            r.check(&rel, true, "written");
        }
    }
    Ok(r)
}
