use std::fmt::Write as _;

use rayon::prelude::*;

use super::{coercivity_profile, has_rcp, is_bound_to_collisions, is_homographic, is_type_r, redundant_subgroup};
use super::{CoercivityProfile, CollisionVerdict};
use crate::error::Result;
use crate::symmetry::{known_homographic_minimizer, named_group, ActionType, Masses, SymmetryGroup, TABLE_ROWS};

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub order: usize,
    pub type_r: bool,
    pub action_type: ActionType,
    /// Orbit sizes, largest first.
    pub decomposition: Vec<usize>,
    pub core_order: usize,
    pub redundant: bool,
    pub coercive_at: CoercivityProfile,
    pub bound_to_collisions: CollisionVerdict,
    pub homographic: bool,
    pub fully_uncoercive: bool,
    pub rcp: bool,
}

impl ClassificationReport {
    pub fn decomposition_string(&self) -> String {
        self.decomposition.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("+")
    }

    /// Flat `key=value` record, one pair per line.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "order={}", self.order);
        let _ = writeln!(s, "type_r={}", yes_no(self.type_r));
        let _ = writeln!(s, "action_type={}", self.action_type);
        let _ = writeln!(s, "transitive_decomposition={}", self.decomposition_string());
        let _ = writeln!(s, "core_order={}", self.core_order);
        let _ = writeln!(s, "redundant={}", yes_no(self.redundant));
        let _ = writeln!(s, "coercive_excluded={}", self.coercive_at);
        let _ = writeln!(s, "bound_to_collisions={}", self.bound_to_collisions);
        let _ = writeln!(s, "homographic={}", yes_no(self.homographic));
        let _ = writeln!(s, "fully_uncoercive={}", yes_no(self.fully_uncoercive));
        let _ = writeln!(s, "rcp={}", yes_no(self.rcp));
        s
    }

    pub fn csv_fields(&self) -> Vec<String> {
        vec![
            self.order.to_string(),
            yes_no(self.type_r).into(),
            self.action_type.to_string(),
            self.decomposition_string(),
            yes_no(self.rcp).into(),
            self.core_order.to_string(),
            yes_no(self.redundant).into(),
            format!("\"{}\"", self.coercive_at),
            format!("\"{}\"", self.bound_to_collisions),
            yes_no(self.homographic).into(),
            yes_no(self.fully_uncoercive).into(),
        ]
    }
}

pub const CSV_HEADER: &str =
    "name,order,type_r,action_type,trans_dec,rcp,hgm,core_order,redundant,coercive_excluded,bound_to_collisions,homographic,fully_uncoercive";

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn classify(group: &SymmetryGroup, masses: &Masses) -> Result<ClassificationReport> {
    group.check_masses(masses)?;
    let type_r = is_type_r(group);
    let coercive_at = coercivity_profile(group, masses)?;
    Ok(ClassificationReport {
        order: group.order(),
        type_r,
        action_type: group.action_type(),
        decomposition: group.transitive_decomposition().iter().map(|o| o.len()).collect(),
        core_order: group.core().order(),
        redundant: redundant_subgroup(group).order() > 1,
        fully_uncoercive: !type_r && coercive_at.zero_excluded,
        coercive_at,
        bound_to_collisions: is_bound_to_collisions(group, masses)?,
        homographic: is_homographic(group, masses)?,
        rcp: has_rcp(group),
    })
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub key: &'static str,
    pub name: &'static str,
    pub report: ClassificationReport,
    /// Homographic global minimizer, where known.
    pub hgm: Option<bool>,
}

impl TableRow {
    pub fn csv_line(&self) -> String {
        let mut f = self.report.csv_fields();
        let hgm = match self.hgm {
            Some(b) => yes_no(b).to_string(),
            None => String::new(),
        };
        f.insert(5, hgm);
        format!("{},{}", self.name, f.join(","))
    }
}

/// One report per row of the catalog of trivial-core planar groups, unit masses.
pub fn build_table() -> Vec<TableRow> {
    TABLE_ROWS
        .par_iter()
        .map(|&(key, name)| {
            let g = named_group(key).expect("catalog name");
            TableRow { key, name, report: classify(&g, &Masses::unit()).expect("unit masses fit every group"), hgm: known_homographic_minimizer(key) }
        })
        .collect()
}
