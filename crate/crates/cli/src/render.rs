//! Plain-text rendering of reports.

use std::fmt::Write;

use ska_core::report::{
    ConjectureJson, ConjectureTally, CriticalJson, EdgeJson, GrowthJson, LabelPartition, LabelSet,
    MmiReport, PartitionsReport, TMaxJson, UniqueJson, ValidationJson, VerifyJson,
};

fn set(s: &LabelSet) -> String {
    format!("{{{}}}", s.join(","))
}

fn family(f: &[LabelSet]) -> String {
    let parts: Vec<String> = f.iter().map(set).collect();
    format!("{{{}}}", parts.join(", "))
}

fn partition(p: &LabelPartition) -> String {
    let parts: Vec<String> = p.iter().map(set).collect();
    parts.join("|")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn mmi(r: &MmiReport) -> String {
    let mut out = String::new();
    writeln!(out, "mmi          {}", r.gamma).unwrap();
    writeln!(out, "gap          {}", r.gap).unwrap();
    writeln!(out, "fundamental  {}", partition(&r.fundamental)).unwrap();
    writeln!(out, "optimal partitions ({}):", r.optimal_partitions.len()).unwrap();
    for p in &r.optimal_partitions {
        writeln!(out, "  {}", partition(p)).unwrap();
    }
    out
}

pub fn partitions(r: &PartitionsReport) -> String {
    let mut out = String::new();
    writeln!(out, "mmi {}", r.gamma).unwrap();
    for e in &r.partitions {
        let mark = if e.optimal { "*" } else { " " };
        writeln!(
            out,
            "{mark} {:>8}  {}",
            e.value.to_string(),
            partition(&e.blocks)
        )
        .unwrap();
    }
    out
}

pub fn critical(r: &CriticalJson) -> String {
    let mut out = String::new();
    writeln!(out, "case         {:?}", r.case).unwrap();
    writeln!(out, "t_max        {}", family(&r.t_max)).unwrap();
    writeln!(out, "critical     {}", family(&r.edges)).unwrap();
    writeln!(out, "common size  {}", r.common_size).unwrap();
    writeln!(out, "greedy       {}", set(&r.greedy)).unwrap();
    writeln!(
        out,
        "brute force  {}",
        if r.bruteforce_agrees {
            "agrees"
        } else {
            "DISAGREES"
        }
    )
    .unwrap();
    out
}

pub fn growth(r: &GrowthJson) -> String {
    let mut out = String::new();
    writeln!(out, " k  rate  witness").unwrap();
    for (k, (v, w)) in r.values.iter().zip(&r.witnesses).enumerate() {
        writeln!(out, "{k:>2}  {:<4}  {}", v.to_string(), set(w)).unwrap();
    }
    if let Some(agrees) = r.shortcut_agrees {
        writeln!(
            out,
            "closed form (k-1)/(l-1): {}",
            if agrees { "agrees" } else { "DISAGREES" }
        )
        .unwrap();
    }
    out
}

pub fn edge(r: &EdgeJson) -> String {
    let mut out = String::new();
    writeln!(out, "edge         {} (weight {})", set(&r.edge), r.weight).unwrap();
    writeln!(out, "loss rate    {}", r.loss_rate).unwrap();
    writeln!(out, "growth rate  {}", r.growth_rate).unwrap();
    writeln!(out, "excess       {}", yes_no(r.excess)).unwrap();
    out
}

pub fn t_max(r: &TMaxJson) -> String {
    let mut out = String::new();
    writeln!(out, "case         {:?}", r.case).unwrap();
    writeln!(out, "t_max        {}", family(&r.t_max)).unwrap();
    if let Some(c) = &r.complement_family {
        writeln!(out, "complements  {}", family(c)).unwrap();
    }
    if let Some(p) = &r.coarsest_optimal {
        writeln!(out, "coarsest     {}", partition(p)).unwrap();
    }
    out
}

pub fn unique(r: &UniqueJson) -> String {
    format!(
        "unique optimal partition: {} ({} optimal)\n",
        yes_no(r.unique_optimal),
        r.optimal_partition_count
    )
}

pub fn verify(r: &VerifyJson) -> String {
    let mut out = String::new();
    for v in &r.verdicts {
        let status = if v.passed { "ok  " } else { "FAIL" };
        write!(
            out,
            "{status} {:<9} {:<10} eps {:<6} mmi {} -> {}  rate {}  quotient {}",
            v.mode.to_string(),
            set(&v.set),
            v.epsilon.to_string(),
            v.mmi_before,
            v.mmi_after,
            v.formula_rate,
            v.quotient
        )
        .unwrap();
        if !v.optimal_partitions_preserved {
            out.push_str(if v.below_gap {
                "  optimal partitions NOT preserved"
            } else {
                "  (new optimal partitions; eps at or above gap)"
            });
        }
        if let Some(c) = &v.integer_step {
            if !c.matches {
                write!(out, "  integer step {} gives {}", c.epsilon, c.quotient).unwrap();
            }
        }
        out.push('\n');
    }
    writeln!(
        out,
        "{} of {} checks passed",
        r.verdicts.iter().filter(|v| v.passed).count(),
        r.verdicts.len()
    )
    .unwrap();
    out
}

pub fn conjecture(r: &ConjectureJson) -> String {
    let mut out = String::new();
    for e in &r.entries {
        writeln!(
            out,
            "{:<10} rate {:<6} predicted {:<6} {}",
            set(&e.edge),
            e.rate.to_string(),
            e.predicted.to_string(),
            if e.holds { "holds" } else { "differs" }
        )
        .unwrap();
    }
    out
}

pub fn tally(r: &ConjectureTally) -> String {
    format!(
        "instances {}  critical edges {}  holds {}  differs {}\n",
        r.instances, r.edges_checked, r.holds, r.violations
    )
}

pub fn validation(r: &ValidationJson) -> String {
    let mut out = String::new();
    if r.valid {
        out.push_str("valid\n");
    }
    for v in &r.violations {
        writeln!(out, "violation: {v}").unwrap();
    }
    if r.truncated {
        out.push_str("(further violations omitted)\n");
    }
    out
}
