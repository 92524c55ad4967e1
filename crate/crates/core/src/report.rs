//! Structured reports: JSON (schema 1) and plain text.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dessins::DessinAnalysis;
use crate::gbar::{Gt1Result, GtFullResult};
use crate::repro::Check;
use crate::sg::{PacketSummary, RelationChecks, SgComputation, SgReport};
use crate::structure::{FactoredOrder, GroupFingerprint};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub subject: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_order: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<PairsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sg: Option<SgSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gt: Option<GtSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dessin: Option<DessinSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<Check>>,
    /// Wall-clock milliseconds per stage.
    #[serde(default)]
    pub timings_ms: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairsSection {
    pub ell: usize,
    pub r: usize,
    pub out_order: usize,
    /// Block size to number of blocks.
    pub block_sizes: BTreeMap<usize, usize>,
    pub num_blocks: usize,
    /// Cycle type of each induced permutation, by label.
    pub cycle_types: BTreeMap<String, String>,
    pub relations: RelationChecks,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SgSection {
    pub h_order: usize,
    pub num_orbits: usize,
    pub coarse_packets: usize,
    pub exact_classes: usize,
    pub packets: Vec<PacketSummary>,
    pub order: FactoredOrder,
    pub order_decimal: String,
    pub simple_factors: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<FingerprintSummary>,
    /// `(a, b)` when all statistics agree with `C2^a x D8^b`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub consistent_with_c2_d8: Option<(u64, u64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explicit_order: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explicit_generators: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FingerprintSummary {
    pub exponent: u64,
    pub center_order: String,
    pub center_elementary_abelian: bool,
    pub central_quotient_order: String,
    pub central_quotient_elementary_abelian: bool,
    pub derived_order: String,
    pub derived_elementary_abelian: bool,
    pub abelianization: Vec<u64>,
}

impl From<&GroupFingerprint> for FingerprintSummary {
    fn from(fp: &GroupFingerprint) -> Self {
        FingerprintSummary {
            exponent: fp.exponent,
            center_order: fp.center_order.to_string(),
            center_elementary_abelian: fp.center_elementary_abelian(),
            central_quotient_order: fp.central_quotient_order.to_string(),
            central_quotient_elementary_abelian: fp.central_quotient_elementary_abelian(),
            derived_order: fp.derived_order.to_string(),
            derived_elementary_abelian: fp.derived_elementary_abelian(),
            abelianization: fp.abelianization.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GtSection {
    pub variant: String,
    pub gbar_order: usize,
    pub r: usize,
    pub order: usize,
    pub double_cosets: usize,
    /// Words of the surviving representatives.
    pub survivors: Vec<String>,
    pub experimental: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DessinSection {
    pub darts: usize,
    pub monodromy_order: String,
    pub transitive: bool,
    pub regular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<CyclicSection>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclicSection {
    pub n: u64,
    pub classes: usize,
    /// Images of the cyclic generator, as permutations of the darts.
    pub representatives: Vec<String>,
}

impl Report {
    pub fn new(command: &str, subject: &str) -> Self {
        Report {
            schema: SCHEMA,
            command: command.into(),
            subject: subject.into(),
            group_order: None,
            pairs: None,
            sg: None,
            gt: None,
            dessin: None,
            checks: None,
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

pub fn pairs_section(c: &SgComputation) -> PairsSection {
    let ell = c.pc.len();
    PairsSection {
        ell,
        r: ell / c.out.len(),
        out_order: c.out.len(),
        block_sizes: c.blocks.size_multiset(),
        num_blocks: c.blocks.num_blocks(),
        cycle_types: c
            .induced
            .iter()
            .map(|p| (p.label.clone(), p.perm.cycle_type_string()))
            .collect(),
        relations: c.relations(),
    }
}

pub fn sg_section(r: &SgReport, with_generators: bool) -> SgSection {
    SgSection {
        h_order: r.h_order,
        num_orbits: r.num_orbits,
        coarse_packets: r.num_coarse_packets,
        exact_classes: r.num_exact_classes,
        packets: r.packets.clone(),
        order: r.order.clone(),
        order_decimal: r.order.to_biguint().to_string(),
        simple_factors: if r.simple_factors.is_empty() {
            String::new()
        } else {
            r.simple_factors.to_string()
        },
        fingerprint: r.fingerprint.as_ref().map(FingerprintSummary::from),
        consistent_with_c2_d8: r.recognized,
        explicit_order: r.explicit_order.as_ref().map(|o| o.to_string()),
        explicit_generators: with_generators
            .then(|| r.explicit_generators.as_ref().map(|g| g.iter().map(|p| p.to_string()).collect()))
            .flatten(),
    }
}

pub fn gt1_section(r: &Gt1Result) -> GtSection {
    GtSection {
        variant: "gt1".into(),
        gbar_order: r.gbar_order,
        r: r.r,
        order: r.order(),
        double_cosets: r.double_cosets.len(),
        survivors: r.survivors.iter().map(|d| d.word.clone()).collect(),
        experimental: false,
    }
}

pub fn gt_full_section(r: &GtFullResult, r_coords: usize) -> GtSection {
    GtSection {
        variant: "gtfull".into(),
        gbar_order: r.gbar_order,
        r: r_coords,
        order: r.order(),
        double_cosets: r.double_cosets,
        survivors: r.classes.iter().map(|c| format!("k={} f={}", c.k, c.f_word)).collect(),
        experimental: true,
    }
}

pub fn dessin_section(a: &DessinAnalysis) -> DessinSection {
    DessinSection {
        darts: a.darts,
        monodromy_order: a.monodromy_order.to_string(),
        transitive: a.transitive,
        regular: a.regular,
        cyclic: None,
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.command, self.subject)?;
        if let Some(o) = &self.group_order {
            writeln!(f, "  group order: {o}")?;
        }
        if let Some(p) = &self.pairs {
            writeln!(f, "  pair classes: {} (r = {}, |Out| = {})", p.ell, p.r, p.out_order)?;
            let sizes: Vec<String> = p.block_sizes.iter().map(|(s, k)| format!("{s}x{k}")).collect();
            writeln!(f, "  blocks: {} ({})", p.num_blocks, sizes.join(", "))?;
            for (label, ct) in &p.cycle_types {
                writeln!(f, "  {label}: {ct}")?;
            }
            writeln!(f, "  relations hold: {}", p.relations.all())?;
        }
        if let Some(s) = &self.sg {
            writeln!(
                f,
                "  H order {}, {} orbits, {} coarse packets, {} exact classes",
                s.h_order, s.num_orbits, s.coarse_packets, s.exact_classes
            )?;
            writeln!(f, "  order: {} = {}", s.order, s.order_decimal)?;
            writeln!(f, "  simple factors: {}", if s.simple_factors.is_empty() { "none" } else { &s.simple_factors })?;
            if let Some(fp) = &s.fingerprint {
                writeln!(
                    f,
                    "  center {} (elementary abelian: {}), central quotient {} (elementary abelian: {}), derived {}",
                    fp.center_order,
                    fp.center_elementary_abelian,
                    fp.central_quotient_order,
                    fp.central_quotient_elementary_abelian,
                    fp.derived_order
                )?;
            }
            match s.consistent_with_c2_d8 {
                Some((a, b)) => writeln!(f, "  consistent with C2^{a} x D8^{b}")?,
                None if s.fingerprint.is_some() => writeln!(f, "  not of the form C2^a x D8^b")?,
                None => {}
            }
            if let Some(o) = &s.explicit_order {
                writeln!(f, "  explicit generators generate a group of order {o}")?;
            }
        }
        if let Some(g) = &self.gt {
            writeln!(f, "  model group order {} (r = {})", g.gbar_order, g.r)?;
            writeln!(
                f,
                "  {}: order {}{}",
                g.variant,
                g.order,
                if g.experimental { " (experimental)" } else { "" }
            )?;
            writeln!(f, "  survivors: {}", g.survivors.join(" "))?;
        }
        if let Some(d) = &self.dessin {
            writeln!(
                f,
                "  {} darts, monodromy order {}, transitive {}, regular {}",
                d.darts, d.monodromy_order, d.transitive, d.regular
            )?;
            if let Some(c) = &d.cyclic {
                writeln!(f, "  cyclic structures of order dividing {}: {} classes", c.n, c.classes)?;
                for r in &c.representatives {
                    writeln!(f, "    {r}")?;
                }
            }
        }
        if let Some(checks) = &self.checks {
            for c in checks {
                writeln!(
                    f,
                    "  {} {} {}: expected {}, computed {} ({:?}, {} ms)",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.subject,
                    c.quantity,
                    c.expected,
                    c.computed,
                    c.basis,
                    c.millis
                )?;
            }
        }
        for (stage, ms) in &self.timings_ms {
            writeln!(f, "  time {stage}: {ms} ms")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::construct;

    #[test]
    fn json_round_trip_is_byte_identical() {
        let g = construct(&"psl2:7".parse().unwrap()).unwrap();
        let c = SgComputation::run(&g, 1_000_000).unwrap();
        let mut rep = Report::new("sg", "psl2:7");
        rep.group_order = Some(g.order().to_string());
        rep.pairs = Some(pairs_section(&c));
        rep.sg = Some(sg_section(&c.report().unwrap(), true));
        rep.timings_ms.insert("total".into(), 12);
        let s = rep.to_json();
        let back = Report::from_json(&s).unwrap();
        assert_eq!(back, rep);
        assert_eq!(back.to_json(), s);
        assert!(s.contains("\"schema\": 1"));
    }
}
