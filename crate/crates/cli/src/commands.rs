use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Value};

use tropgrass::fan::{lex_coordinate_table, orbit_fvector, star_scan};
use tropgrass::matroid::{enumerate_matroids, named_matroid, TABLE_IDS};
use tropgrass::plucker::{
    affine_chart, affine_ideal_generators, jacobian_minors, limit_ideal_generators, pluecker_valuation,
    thin_schubert_generators, unit_witnesses, PluckerError,
};
use tropgrass::poly::initial_form;
use tropgrass::subdivision::{
    center_decomposition, dual_graph, facets, nondegenerate_flats, regular_subdivision, CellCertificate,
    SubdivisionComplex,
};
use tropgrass::tree::{four_point_check, tree_distance, tree_from_weight, TreeError};
use tropgrass::{
    FanData, FanError, GroundSubset, IndexConvention, Matroid, PhyloTree, PlueckerContext, PolyMatrix, WeightVector,
};

use crate::report::{digest, Outcome};
use crate::{Args, Command, TreeCommand};

type Inputs = BTreeMap<String, String>;
type Run = Result<Outcome, String>;

fn read_json(path: &Path, key: &str, inputs: &mut Inputs) -> Result<Value, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    inputs.insert(key.to_string(), digest(&bytes));
    serde_json::from_slice(&bytes).map_err(|e| format!("{} is not valid JSON: {e}", path.display()))
}

fn need<'a, T>(value: &'a Option<T>, flag: &str) -> Result<&'a T, String> {
    value.as_ref().ok_or_else(|| format!("this subcommand needs --{flag}"))
}

fn weight(args: &Args, inputs: &mut Inputs) -> Result<WeightVector, String> {
    let v = read_json(need(&args.weight, "weight")?, "weight", inputs)?;
    WeightVector::from_json(&v).map_err(|e| e.to_string())
}

fn matroid_opt(args: &Args, inputs: &mut Inputs) -> Result<Option<Matroid>, String> {
    if let Some(name) = &args.named {
        inputs.insert("named".into(), digest(name.as_bytes()));
        return named_matroid(name).map(Some).map_err(|e| e.to_string());
    }
    match &args.matroid {
        Some(path) => {
            let v = read_json(path, "matroid", inputs)?;
            serde_json::from_value(v).map(Some).map_err(|e| format!("invalid matroid: {e}"))
        }
        None => Ok(None),
    }
}

fn matroid(args: &Args, inputs: &mut Inputs) -> Result<Matroid, String> {
    matroid_opt(args, inputs)?.ok_or_else(|| "this subcommand needs --matroid or --named".to_string())
}

/// `1,2,4` or `124`.
fn subset(s: &str) -> Result<GroundSubset, String> {
    GroundSubset::parse_label(s).ok_or_else(|| format!("`{s}` is not a subset such as 1,2,4"))
}

fn index_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| format!("`{t}` is not a ray index")))
        .collect()
}

fn bases_json(m: &Matroid) -> Value {
    json!(m.bases().iter().map(|b| b.to_vec()).collect::<Vec<_>>())
}

fn subdivision(args: &Args, inputs: &mut Inputs) -> Result<SubdivisionComplex, String> {
    let w = weight(args, inputs)?;
    let m = matroid_opt(args, inputs)?.unwrap_or_else(|| Matroid::uniform(w.d(), w.n()));
    regular_subdivision(&m, &w).map_err(|e| e.to_string())
}

fn non_matroid_witness(s: &SubdivisionComplex) -> Option<Value> {
    s.cells.iter().enumerate().find_map(|(k, c)| match &c.certificate {
        CellCertificate::NotMatroid(e) => Some(json!({
            "cell": k,
            "bases": c.bases.iter().map(|b| b.to_vec()).collect::<Vec<_>>(),
            "violation": e.to_string(),
        })),
        CellCertificate::Matroid(_) => None,
    })
}

pub fn run(command: &Command, args: &Args, inputs: &mut Inputs) -> Run {
    match command {
        Command::Subdivide => subdivide(args, inputs),
        Command::DualGraph => dual(args, inputs),
        Command::Facets => facet_list(args, inputs),
        Command::Tree(t) => tree(t, args, inputs),
        Command::Relations => relations(args, inputs),
        Command::InitialForm => initial_forms(args, inputs),
        Command::Chart => chart(args, inputs),
        Command::Jacobian => jacobian(args, inputs),
        Command::Valuation => valuation(args, inputs),
        Command::StarScan => scan(args, inputs),
        Command::OrbitFvector => orbits(args, inputs),
        Command::Enumerate => enumerate(args),
        Command::ConvertFan => convert(args, inputs),
        Command::Named => named(args, inputs),
    }
}

fn subdivide(args: &Args, inputs: &mut Inputs) -> Run {
    let s = subdivision(args, inputs)?;
    let mut text = format!(
        "{} maximal cells; matroid subdivision: {}\n",
        s.cells.len(),
        if s.is_matroid_subdivision() { "yes" } else { "no" }
    );
    for (k, c) in s.cells.iter().enumerate() {
        let kind = if c.matroid().is_some() { "matroid" } else { "not a matroid" };
        text.push_str(&format!("cell {k}: {} bases, {kind}\n", c.bases.len()));
    }
    Ok(match non_matroid_witness(&s) {
        Some(w) => Outcome::failed(s.to_json(), w, text),
        None => Outcome::ok(s.to_json(), text),
    })
}

fn dual(args: &Args, inputs: &mut Inputs) -> Run {
    let s = subdivision(args, inputs)?;
    if let Some(w) = non_matroid_witness(&s) {
        return Ok(Outcome::failed(s.to_json(), w, "the subdivision has a cell that is not a matroid polytope"));
    }
    let g = dual_graph(&s).map_err(|e| e.to_string())?;
    let mut result = g.to_json();
    result["is_tree"] = json!(g.is_tree());
    let mut text = format!("{} cells, {} edges\n", g.vertices.len(), g.edges.len());
    for v in 0..g.vertices.len() {
        let mut nb = g.neighbours(v);
        nb.sort();
        let list: Vec<String> = nb.iter().map(|u| u.to_string()).collect();
        text.push_str(&format!("cell {v} ({} bases): {}\n", g.vertices[v].num_bases(), list.join(" ")));
    }
    for (i, j, m) in &g.edges {
        text.push_str(&format!("edge {i} -- {j}: {} bases\n", m.num_bases()));
    }
    if let Some(hub) = (0..g.vertices.len()).find(|&v| g.vertices.len() > 2 && g.degree(v) + 1 == g.vertices.len())
    {
        if g.edges.len() + 1 == g.vertices.len() {
            text.push_str(&format!("star with center cell {hub}\n"));
        }
    }
    if let Ok(cd) = center_decomposition(&g, &s) {
        result["center"] = json!({
            "matroid": cd.center.to_json_value(),
            "leaves": cd.leaves.iter().map(|l| json!({
                "cell": l.cell,
                "matroid": l.matroid.to_json_value(),
                "facet": l.facet.to_json_value(),
            })).collect::<Vec<_>>(),
        });
    }
    Ok(Outcome::ok(result, text))
}

fn facet_list(args: &Args, inputs: &mut Inputs) -> Run {
    let m = matroid(args, inputs)?;
    if let Some(flat) = &args.facet_flat {
        let eta = subset(flat)?;
        if !eta.within(m.n()) {
            return Err(format!("{eta} is not a subset of [{}]", m.n()));
        }
        let face = m.face_matroid(eta);
        let result = json!({
            "flat": eta.to_vec(),
            "rank": m.rank(eta),
            "face": face.to_json_value(),
        });
        let text = format!("face of x_{} = {}: {} bases\n", eta.label(m.n()), m.rank(eta), face.num_bases());
        return Ok(if nondegenerate_flats(&m).contains(&eta) {
            Outcome::ok(result, text)
        } else {
            let witness = json!({"flat": eta.to_vec(), "is_flat": m.is_flat(eta), "nondegenerate": false});
            Outcome::failed(result, witness, text + "not a facet-defining flat\n")
        });
    }
    let list = facets(&m);
    let entries: Vec<Value> = list
        .iter()
        .map(|f| {
            let face = f.face(&m).expect("facets are matroid faces");
            json!({"facet": f, "label": f.to_string(), "face_bases": face.num_bases()})
        })
        .collect();
    let text: String = list.iter().map(|f| format!("{f}\n")).collect();
    Ok(Outcome::ok(json!({"matroid": m.to_json_value(), "facets": entries}), text))
}

fn tree(cmd: &TreeCommand, args: &Args, inputs: &mut Inputs) -> Run {
    match cmd {
        TreeCommand::Check => {
            let w = weight(args, inputs)?;
            match four_point_check(&w) {
                Ok(()) => Ok(Outcome::ok(json!({"tree_metric": true}), "four-point condition holds\n")),
                Err(TreeError::FourPointViolation(q)) => Ok(Outcome::failed(
                    json!({"tree_metric": false}),
                    json!({"quadruple": q.to_vec()}),
                    format!("four-point condition fails on {}\n", q.label(w.n())),
                )),
                Err(e) => Err(e.to_string()),
            }
        }
        TreeCommand::FromMetric => {
            let w = weight(args, inputs)?;
            match tree_from_weight(&w) {
                Ok(t) => {
                    let splits: Vec<String> = t.splits().iter().map(|s| s.label(w.n())).collect();
                    let text = format!("{} internal vertices; splits {}\n", t.internal_vertices().len(), splits.join(" "));
                    Ok(Outcome::ok(t.to_json(), text))
                }
                Err(TreeError::FourPointViolation(q)) => Ok(Outcome::failed(
                    Value::Null,
                    json!({"quadruple": q.to_vec()}),
                    format!("not a tree metric: four-point condition fails on {}\n", q.label(w.n())),
                )),
                Err(e) => Err(e.to_string()),
            }
        }
        TreeCommand::Distance => {
            let v = read_json(need(&args.tree, "tree")?, "tree", inputs)?;
            let t = PhyloTree::from_json(&v).map_err(|e| e.to_string())?;
            let w = tree_distance(&t);
            let text: String = w.nonzero().map(|(k, x)| format!("w_{} = {x}\n", k.label(t.n()))).collect();
            Ok(Outcome::ok(w.to_json(), text))
        }
    }
}

fn relations(args: &Args, inputs: &mut Inputs) -> Run {
    let (gens, source) = if args.weight.is_some() {
        let s = subdivision(args, inputs)?;
        match limit_ideal_generators(&s) {
            Ok(g) => (g, "limit"),
            Err(PluckerError::NonMatroidCell(k)) => {
                return Ok(Outcome::failed(
                    Value::Null,
                    non_matroid_witness(&s).unwrap_or(json!({"cell": k})),
                    "the subdivision has a cell that is not a matroid polytope\n",
                ))
            }
            Err(e) => return Err(e.to_string()),
        }
    } else {
        (thin_schubert_generators(&matroid(args, inputs)?), "thin_schubert")
    };
    let strings: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    let text = format!("{} generators\n{}\n", strings.len(), strings.join("\n"));
    Ok(Outcome::ok(json!({"source": source, "generators": strings}), text))
}

fn initial_forms(args: &Args, inputs: &mut Inputs) -> Run {
    let w = weight(args, inputs)?;
    let m = matroid_opt(args, inputs)?.unwrap_or_else(|| Matroid::uniform(w.d(), w.n()));
    if (m.d(), m.n()) != (w.d(), w.n()) {
        return Err(format!("weight is indexed by Λ({},{}) but the matroid has (d, n) = ({}, {})", w.d(), w.n(), m.d(), m.n()));
    }
    let weights = PlueckerContext::new(m.d(), m.n()).weights(&w);
    let mut rows = Vec::new();
    let mut text = String::new();
    for g in thin_schubert_generators(&m) {
        let init = initial_form(&g, &weights).map_err(|e| e.to_string())?;
        text.push_str(&format!("in_w({g}) = {init}\n"));
        rows.push(json!({"generator": g.to_string(), "initial_form": init.to_string()}));
    }
    Ok(Outcome::ok(json!({"initial_forms": rows}), text))
}

fn chart_parts(args: &Args, inputs: &mut Inputs) -> Result<(Matroid, GroundSubset), String> {
    let m = matroid(args, inputs)?;
    let beta = subset(need(&args.basis, "basis")?)?;
    Ok((m, beta))
}

fn chart(args: &Args, inputs: &mut Inputs) -> Run {
    let (m, beta) = chart_parts(args, inputs)?;
    let c = affine_chart(&m, beta).map_err(|e| e.to_string())?;
    let p = affine_ideal_generators(&c);
    let text = format!(
        "variables: {}\ngenerators:\n{}\n",
        c.variable_names(&p.variables).join(" "),
        p.generators.iter().map(|g| format!("  {g}")).collect::<Vec<_>>().join("\n")
    );
    Ok(Outcome::ok(json!({"chart": c.to_json(), "presentation": p.to_json(&c)}), text))
}

fn jacobian(args: &Args, inputs: &mut Inputs) -> Run {
    let (m, beta) = chart_parts(args, inputs)?;
    let c = affine_chart(&m, beta).map_err(|e| e.to_string())?;
    let p = affine_ideal_generators(&c);
    if p.generators.is_empty() {
        let result = json!({"presentation": p.to_json(&c), "matrix": [], "minors": [], "certificates": []});
        return Ok(Outcome::ok(result, "no generators: the chart is an open torus subset of affine space\n"));
    }
    let (matrix, minors) = jacobian_minors(&p.generators, &p.variables).map_err(|e| e.to_string())?;
    let eliminated: Vec<usize> = p.eliminated.iter().map(|e| e.var).collect();
    let certs = unit_witnesses(&minors, &c, &eliminated, args.max_factors);
    let minor_strings: Vec<String> = minors.iter().map(|g| g.to_string()).collect();
    let result = json!({
        "presentation": p.to_json(&c),
        "matrix": matrix.iter().map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "minors": minor_strings,
        "certificates": certs.iter().map(|w| w.to_json(&c)).collect::<Vec<_>>(),
    });
    let mut text = format!("{} nonzero minors, {} certified units\n", minors.len(), certs.len());
    for w in &certs {
        let factors: Vec<String> = w.factors.iter().map(|l| format!("A_{}", l.label(c.n()))).collect();
        text.push_str(&format!("  {} = {} * {}\n", w.minor, w.scalar, factors.join(" * ")));
    }
    Ok(if certs.is_empty() {
        Outcome::failed(result, json!({"uncertified_minors": minor_strings}), text)
    } else {
        Outcome::ok(result, text)
    })
}

fn valuation(args: &Args, inputs: &mut Inputs) -> Run {
    let v = read_json(need(&args.matrix, "matrix")?, "matrix", inputs)?;
    let mat = PolyMatrix::from_json(&v).map_err(|e| e.to_string())?;
    match pluecker_valuation(&mat) {
        Ok(w) => {
            let text: String = w.nonzero().map(|(k, x)| format!("w_{} = {x}\n", k.label(w.n()))).collect();
            Ok(Outcome::ok(w.to_json(), text))
        }
        Err(PluckerError::SingularMinor(l)) => Ok(Outcome::failed(
            Value::Null,
            json!({"singular_minor": l.to_vec()}),
            format!("the minor on columns {} vanishes\n", l.label(mat.n())),
        )),
        Err(e) => Err(e.to_string()),
    }
}

fn fan(args: &Args, inputs: &mut Inputs) -> Result<(FanData, IndexConvention), String> {
    let v = read_json(need(&args.fan, "fan")?, "fan", inputs)?;
    let f = FanData::from_json(&v).map_err(|e| e.to_string())?;
    let conv = v
        .get("index_convention")
        .and_then(Value::as_str)
        .and_then(IndexConvention::parse)
        .unwrap_or(IndexConvention::Lex1);
    Ok((f, conv))
}

fn scan(args: &Args, inputs: &mut Inputs) -> Run {
    let (f, conv) = fan(args, inputs)?;
    let raw = index_list(args.cone.as_deref().unwrap_or(""))?;
    let off = conv.offset();
    let cone: Vec<usize> = raw
        .iter()
        .map(|&i| i.checked_sub(off).ok_or_else(|| format!("ray index {i} is below the {} base", conv.name())))
        .collect::<Result<_, _>>()?;
    let r = match star_scan(&f, &cone, &f.lineality) {
        Ok(r) => r,
        Err(FanError::UnknownCone(c)) => return Err(format!("{:?} is not a cone of the fan", c.iter().map(|i| i + off).collect::<Vec<_>>())),
        Err(e) => return Err(e.to_string()),
    };
    let result = r.to_json(off);
    let text = format!("star of {} maximal cones, {} pairs, {} failures\n", r.star.len(), r.pairs_checked, r.failures.len());
    Ok(if r.failures.is_empty() {
        Outcome::ok(result, text)
    } else {
        let witness = result["failures"].clone();
        Outcome::failed(result, witness, text)
    })
}

fn orbits(args: &Args, inputs: &mut Inputs) -> Run {
    let (f, conv) = fan(args, inputs)?;
    let r = match orbit_fvector(&f, &f.symmetry) {
        Ok(r) => r,
        Err(FanError::ActionInvalid(msg)) => {
            return Ok(Outcome::failed(Value::Null, json!({"action": msg}), "the symmetry does not preserve the fan\n"))
        }
        Err(e) => return Err(e.to_string()),
    };
    let off = conv.offset();
    let reps: Vec<Vec<Vec<usize>>> = r
        .representatives
        .iter()
        .map(|d| d.iter().map(|c| c.iter().map(|i| i + off).collect()).collect())
        .collect();
    let text = format!("f-vector {:?}\norbit f-vector {:?}\n", r.fvector, r.orbit_fvector);
    Ok(Outcome::ok(
        json!({
            "fvector": r.fvector,
            "orbit_fvector": r.orbit_fvector,
            "orbit_sizes": r.orbit_sizes,
            "representatives": reps,
            "index_convention": conv.name(),
        }),
        text,
    ))
}

fn enumerate(args: &Args) -> Run {
    let (d, n) = (*need(&args.d, "d")?, *need(&args.n, "n")?);
    let classes = enumerate_matroids(d, n).map_err(|e| e.to_string())?;
    let text = format!("{} isomorphism classes of rank {d} matroids on {n} elements\n", classes.len());
    Ok(Outcome::ok(
        json!({"d": d, "n": n, "count": classes.len(), "classes": classes.iter().map(bases_json).collect::<Vec<_>>()}),
        text,
    ))
}

fn convert(args: &Args, inputs: &mut Inputs) -> Run {
    let (f, from) = fan(args, inputs)?;
    let to = IndexConvention::parse(need(&args.to, "to")?).expect("clap restricts the values");
    let table: Vec<Value> = lex_coordinate_table(f.d, f.n)
        .into_iter()
        .map(|(zero, one, target)| json!({"website0": zero, "lex1": one, "index": target}))
        .collect();
    let text = format!("{} rays, {} cones: {} -> {}\n", f.rays.len(), f.num_cones(), from.name(), to.name());
    Ok(Outcome::ok(json!({"fan": f.to_json(to), "coordinate_table": table}), text))
}

fn named(args: &Args, inputs: &mut Inputs) -> Run {
    if args.named.is_none() && args.matroid.is_none() {
        let mut names: Vec<String> = ["fano", "pappus", "c_intro", "fig36", "m1_37", "m2_37", "m_<ijk>", "mprime_<ijk>", "uniform(d,n)"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        names.extend(TABLE_IDS.iter().map(|id| format!("table({id})")));
        let text = names.join("\n") + "\n";
        return Ok(Outcome::ok(json!({"names": names}), text));
    }
    let m = matroid(args, inputs)?;
    let (flats, lines) = m.flats_and_lines();
    let label = |s: &GroundSubset| s.label(m.n());
    let text = format!(
        "rank {} on {} elements, {} bases\nlines: {}\n",
        m.d(),
        m.n(),
        m.num_bases(),
        lines.iter().map(label).collect::<Vec<_>>().join(" ")
    );
    Ok(Outcome::ok(
        json!({
            "matroid": m.to_json_value(),
            "lines": lines.iter().map(|l| l.to_vec()).collect::<Vec<_>>(),
            "flats": flats.len(),
            "simple": m.is_simple(),
            "connected": m.is_connected(),
        }),
        text,
    ))
}
