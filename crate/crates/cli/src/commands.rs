use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use artin3_core::character::character_table;
use artin3_core::cohomology::{
    enumerate_central_extensions_with_budget, h2_basis_with_budget, schur_multiplier_3rank,
};
use artin3_core::conductor::{
    artin_exponent, artin_exponent_from_orders, conductor_spectrum, cyclic_subgroup_of_order,
    ArtinExponent,
};
use artin3_core::counting::BoundParams;
use artin3_core::group::{
    abelian_invariants, build_named_group, read_group, structure_invariants, write_group,
};
use artin3_core::verify::{render, run_all, run_criterion, Status, VerifyOptions};
use artin3_core::{
    BoundReport, Error, FiltrationOrders, Group, RamificationFiltration, Result, Subgroup,
};
use serde_json::{json, Value};

use crate::output::{join, json as emit, reformat};
use crate::{Cli, Command, ConductorArgs, GroupAction, GroupSelect};

pub fn run(cli: &Cli) -> Result<u8> {
    let budget = cli.budget_mb.saturating_mul(1 << 20);
    let (text, code) = match &cli.command {
        Command::Group {
            select,
            invariants,
            action,
        } => match action {
            Some(GroupAction::Dump { select, output }) => {
                let g = build(select)?;
                let table = write_group(&g);
                match output {
                    Some(path) => fs::write(path, table)?,
                    None => print!("{table}"),
                }
                return Ok(0);
            }
            Some(GroupAction::Load { file, invariants }) => {
                let g = read_group(&fs::read_to_string(file)?)?;
                (group_summary(&g, *invariants, cli.json)?, 0)
            }
            None => {
                let select = select
                    .as_ref()
                    .ok_or_else(|| invalid("group", "give --name or a subcommand"))?;
                (group_summary(&build(select)?, *invariants, cli.json)?, 0)
            }
        },
        Command::Chartable { select, degrees } => {
            (chartable(&build(select)?, *degrees, cli.json)?, 0)
        }
        Command::Conductor(args) => (conductor(args, cli.json)?, 0),
        Command::H2 { select, enumerate } => {
            (h2(&build(select)?, *enumerate, budget, cli.json)?, 0)
        }
        Command::Bounds { p, m, config } => (bounds(*p, *m, config.as_deref(), cli.json)?, 0),
        Command::Verify { fast, criteria } => verify(*fast, criteria, budget, cli.json)?,
    };
    print!("{text}");
    Ok(code)
}

fn build(select: &GroupSelect) -> Result<Group> {
    build_named_group(&select.name, &select.params)
}

fn label(g: &Group) -> String {
    g.name().unwrap_or("(unnamed)").to_string()
}

fn group_summary(g: &Group, invariants: bool, as_json: bool) -> Result<String> {
    let mut v = json!({
        "name": g.name(),
        "order": g.order(),
        "classes": g.classes().len(),
        "abelian": g.is_abelian(),
    });
    let inv = invariants.then(|| structure_invariants(g));
    if let Some(inv) = &inv {
        v["center_order"] = json!(inv.center.order());
        v["derived_order"] = json!(inv.derived.order());
        v["abelianization"] = json!(inv.abelianization);
        v["exponent"] = json!(inv.exponent);
    }
    if as_json {
        return emit(&v);
    }
    let mut out = format!(
        "group {}\norder {}\nclasses {}\n",
        label(g),
        g.order(),
        g.classes().len()
    );
    if let Some(inv) = inv {
        let _ = writeln!(out, "center order {}", inv.center.order());
        let _ = writeln!(out, "derived subgroup order {}", inv.derived.order());
        let _ = writeln!(out, "abelianization {:?}", inv.abelianization);
        let _ = writeln!(out, "exponent {}", inv.exponent);
    }
    Ok(out)
}

fn chartable(g: &Group, degrees_only: bool, as_json: bool) -> Result<String> {
    let t = character_table(g)?;
    if !degrees_only {
        return if as_json {
            reformat(&t.to_json()?)
        } else {
            Ok(t.to_text())
        };
    }
    let degrees = t.degrees();
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &d in &degrees {
        match counts.last_mut() {
            Some((e, c)) if *e == d => *c += 1,
            _ => counts.push((d, 1)),
        }
    }
    if as_json {
        let by_degree: serde_json::Map<String, Value> = counts
            .iter()
            .map(|(d, c)| (d.to_string(), json!(c)))
            .collect();
        return emit(
            &json!({ "group": g.name(), "order": g.order(), "degrees": degrees, "counts": by_degree }),
        );
    }
    let mut out = format!(
        "group {} (order {})\ndegrees: {}\n",
        label(g),
        g.order(),
        join(&degrees)
    );
    for (d, c) in counts {
        let _ = writeln!(out, "degree {d}: {c}");
    }
    Ok(out)
}

fn exponent_json(e: &ArtinExponent) -> Value {
    json!({ "value": e.value.to_string(), "integral": e.integral })
}

fn spectrum_output(
    head: Value,
    spectrum: &[ArtinExponent],
    as_json: bool,
    title: &str,
) -> Result<String> {
    if as_json {
        let mut v = head;
        v["spectrum"] = Value::Array(spectrum.iter().map(exponent_json).collect());
        return emit(&v);
    }
    let values: Vec<String> = spectrum.iter().map(|e| e.value.to_string()).collect();
    let mut out = format!("{title}\nspectrum: {}\n", join(&values));
    let mut i = 0;
    while i < values.len() {
        let j = (i..values.len())
            .find(|&j| values[j] != values[i])
            .unwrap_or(values.len());
        let _ = writeln!(out, "exponent {}: {} character(s)", values[i], j - i);
        i = j;
    }
    if spectrum.iter().any(|e| !e.integral) {
        out.push_str("note: some exponents are not integers\n");
    }
    Ok(out)
}

fn invalid(name: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParams {
        name: name.into(),
        reason: reason.into(),
    }
}

fn conductor(args: &ConductorArgs, as_json: bool) -> Result<String> {
    if let Some(tame) = &args.tame {
        let name = args
            .name
            .as_deref()
            .expect("clap enforces --name with --tame");
        let g = build_named_group(name, &args.params)?;
        let t = parse_tame(&g, tame)?;
        let spectrum = conductor_spectrum(&g, &t, args.degree)?;
        let head = json!({ "group": g.name(), "tame_order": t.order(), "degree": args.degree });
        let title = format!(
            "group {}, tame subgroup of order {}, degree {}",
            label(&g),
            t.order(),
            args.degree
        );
        return spectrum_output(head, &spectrum, as_json, &title);
    }
    if let Some(list) = &args.orders {
        let p = args.p.expect("clap enforces --p with --orders");
        return orders_output(&FiltrationOrders::parse(list, p)?, args.degree, as_json);
    }
    if let Some(path) = &args.filtration {
        return filtration_file(args, path, as_json);
    }
    Err(invalid(
        "conductor",
        "give --tame, --orders or --filtration",
    ))
}

fn parse_tame(g: &Group, spectrum: &str) -> Result<Subgroup> {
    let k = match spectrum
        .strip_prefix('C')
        .unwrap_or(spectrum)
        .parse::<usize>()
    {
        Ok(k) if k >= 1 => k,
        _ => {
            return Err(invalid(
                "--tame",
                format!("expected Ck or 1, got `{spectrum}`"),
            ))
        }
    };
    cyclic_subgroup_of_order(g, k)
}

fn orders_output(orders: &FiltrationOrders, degree: i64, as_json: bool) -> Result<String> {
    if degree < 1 {
        return Err(invalid("--degree", "must be positive"));
    }
    let e = artin_exponent_from_orders(degree as u64, orders);
    if as_json {
        return emit(&json!({
            "p": orders.p,
            "n": orders.n,
            "tame": orders.tame,
            "orders": orders.orders,
            "degree": degree,
            "exponent": exponent_json(&e),
        }));
    }
    Ok(format!(
        "orders: {}\np = {}, wild depth n = {}, tame part {}\nexponent for degree {} with central elements in every nontrivial G_i: {}{}\n",
        join(&orders.orders),
        orders.p,
        orders.n,
        orders.tame,
        degree,
        e.value,
        if e.integral { "" } else { " (not an integer)" }
    ))
}

fn filtration_file(args: &ConductorArgs, path: &Path, as_json: bool) -> Result<String> {
    let text = fs::read_to_string(path)?;
    let mut order_line = None;
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_list = |s: &str| -> Result<Vec<usize>> {
            s.split_whitespace()
                .map(|t| {
                    t.parse().map_err(|_| Error::Parse {
                        line: i + 1,
                        msg: format!("bad entry `{t}`"),
                    })
                })
                .collect()
        };
        if let Some((head, rest)) = line.split_once(':') {
            let idx: usize = head
                .trim()
                .strip_prefix('G')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse {
                    line: i + 1,
                    msg: "expected `G<i>:`".into(),
                })?;
            if idx != members.len() {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected G{}", members.len()),
                });
            }
            members.push(parse_list(rest)?);
        } else if order_line.is_none() && members.is_empty() {
            order_line = Some(line.to_string());
        } else {
            return Err(Error::Parse {
                line: i + 1,
                msg: "unexpected line".into(),
            });
        }
    }
    if members.is_empty() {
        let list = order_line.ok_or_else(|| Error::Parse {
            line: 0,
            msg: "empty filtration file".into(),
        })?;
        let p = args
            .p
            .ok_or_else(|| invalid("conductor", "--p is required for an order list"))?;
        return orders_output(&FiltrationOrders::parse(&list, p)?, args.degree, as_json);
    }
    let name = args.name.as_deref().ok_or_else(|| {
        invalid(
            "conductor",
            "--name is required when the file lists subgroups",
        )
    })?;
    let g = build_named_group(name, &args.params)?;
    let mut chain = members
        .iter()
        .map(|m| Subgroup::from_members(&g, m))
        .collect::<Result<Vec<_>>>()?;
    if !chain.last().is_some_and(Subgroup::is_trivial) {
        chain.push(Subgroup::trivial(&g));
    }
    if let Some(list) = order_line {
        let expected: Vec<usize> = list
            .split_whitespace()
            .map(|t| {
                t.parse().map_err(|_| Error::Parse {
                    line: 1,
                    msg: format!("bad order `{t}`"),
                })
            })
            .collect::<Result<_>>()?;
        let got: Vec<usize> = chain.iter().map(Subgroup::order).collect();
        if got[..expected.len().min(got.len())] != expected[..expected.len().min(got.len())] {
            return Err(invalid(
                "filtration",
                format!("member lists have orders {got:?}, header says {expected:?}"),
            ));
        }
    }
    let filt = RamificationFiltration::new(&g, chain)?;
    let table = character_table(&g)?;
    let mut spectrum = table
        .of_degree(args.degree)
        .into_iter()
        .map(|chi| artin_exponent(chi, &filt))
        .collect::<Result<Vec<_>>>()?;
    spectrum.sort_by_key(|e| e.value);
    let head = json!({ "group": g.name(), "orders": filt.orders(), "degree": args.degree });
    let title = format!(
        "group {}, filtration orders {}, degree {}",
        label(&g),
        join(&filt.orders()),
        args.degree
    );
    spectrum_output(head, &spectrum, as_json, &title)
}

fn h2(g: &Group, enumerate: bool, budget: usize, as_json: bool) -> Result<String> {
    let (basis, ext) = if enumerate {
        let e = enumerate_central_extensions_with_budget(g, budget)?;
        (e.basis.clone(), Some(e))
    } else {
        (h2_basis_with_budget(g, budget)?, None)
    };
    let ext_rank = abelian_invariants(g)
        .iter()
        .filter(|&&d| d % 3 == 0)
        .count();
    let schur = basis.h2_dim.checked_sub(ext_rank);
    debug_assert_eq!(schur, schur_multiplier_3rank(g).ok());
    let mut v = json!({
        "group": g.name(),
        "order": g.order(),
        "z2_dim": basis.z2_dim,
        "b2_dim": basis.b2_dim,
        "h2_dim": basis.h2_dim,
        "hom_dim": basis.hom_dim,
        "schur_3rank": schur,
    });
    let mut out = format!(
        "group {} (order {})\ndim Z2 = {}, dim B2 = {}, dim H2 = {}\ndim Hom(G, C3) = {}\n",
        label(g),
        g.order(),
        basis.z2_dim,
        basis.b2_dim,
        basis.h2_dim,
        basis.hom_dim
    );
    match schur {
        Some(s) => {
            let _ = writeln!(out, "Schur multiplier 3-rank = {s}");
        }
        None => {
            return Err(Error::Inconsistent(
                "h2 dimension below the Ext rank".into(),
            ))
        }
    }
    if let Some(e) = ext {
        let order = 3 * g.order();
        let classes: Vec<Value> = e
            .extensions
            .iter()
            .map(|x| {
                json!({
                    "split": x.split,
                    "stem": x.stem,
                    "h2_classes": x.classes.len(),
                    "degree3_count": x.degree3_count,
                    "faithful_degree3_count": x.faithful_degree3_count,
                    "abelianization": x.fingerprint.abelian_invariants,
                    "exponent": x.fingerprint.exponent,
                    "class_count": x.fingerprint.class_count,
                })
            })
            .collect();
        let separations: Vec<Value> = e
            .separations
            .iter()
            .map(|(a, b, why)| json!({ "classes": [a, b], "invariant": why }))
            .collect();
        v["extension_order"] = json!(order);
        v["isomorphism_classes"] = json!(e.extensions.len());
        v["non_split_classes"] = json!(e.non_split_count());
        v["extensions"] = Value::Array(classes);
        v["separations"] = Value::Array(separations);
        let _ = writeln!(
            out,
            "{} isomorphism classes of central extensions by C3 (order {order})",
            e.extensions.len()
        );
        let _ = writeln!(out, "{} non-split classes", e.non_split_count());
        for (i, x) in e.extensions.iter().enumerate() {
            let _ = writeln!(
                out,
                "class {i}: {}{}, {} H2 classes, {} degree-3 irreducibles ({} faithful on the kernel), abelianization {:?}",
                if x.split { "split" } else { "non-split" },
                if x.stem { ", stem" } else { "" },
                x.classes.len(),
                x.degree3_count,
                x.faithful_degree3_count,
                x.fingerprint.abelian_invariants
            );
        }
        for (a, b, why) in &e.separations {
            let _ = writeln!(out, "classes {a} and {b} separated by: {why}");
        }
    }
    if as_json {
        emit(&v)
    } else {
        Ok(out)
    }
}

fn bounds(p: u64, m: u32, config: Option<&Path>, as_json: bool) -> Result<String> {
    let params = match config {
        Some(path) => BoundParams::parse_config(&fs::read_to_string(path)?)?,
        None => BoundParams::default(),
    };
    let report = BoundReport::compute(p, m, &params)?;
    if as_json {
        reformat(&report.to_json()?)
    } else {
        Ok(report.to_text())
    }
}

fn verify(fast: bool, criteria: &[u8], budget: usize, as_json: bool) -> Result<(String, u8)> {
    let opts = VerifyOptions {
        fast,
        budget_bytes: budget,
    };
    let results = if criteria.is_empty() {
        run_all(&opts)
    } else {
        let mut ids = criteria.to_vec();
        ids.sort_unstable();
        ids.dedup();
        ids.into_iter().map(|id| run_criterion(id, &opts)).collect()
    };
    let code = if results.iter().any(|r| r.budget_exceeded) {
        3
    } else if results.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    };
    let text = if as_json {
        emit(&serde_json::to_value(&results)?)?
    } else {
        render(&results)
    };
    Ok((text, code))
}
