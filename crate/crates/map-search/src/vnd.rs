//! Variable neighborhood descent over a dimensionwise and a vectorwise
//! search, and a uniform handle over all local searches.

use std::fmt;
use std::str::FromStr;

use map_core::{Assignment, MapError, MapInstance, Result};

use crate::dv::{dv_search, DvScope};
use crate::kopt::k_opt;
use crate::vopt::v_opt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vectorwise {
    KOpt2,
    KOpt3,
    VOpt,
}

impl Vectorwise {
    pub fn run(self, inst: &MapInstance, a: &Assignment) -> Assignment {
        match self {
            Vectorwise::KOpt2 => k_opt(inst, a, 2).expect("k = 2"),
            Vectorwise::KOpt3 => k_opt(inst, a, 3).expect("k = 3"),
            Vectorwise::VOpt => v_opt(inst, a, false),
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            Vectorwise::KOpt2 => "2",
            Vectorwise::KOpt3 => "3",
            Vectorwise::VOpt => "v",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VndCombo {
    dv: DvScope,
    opt: Vectorwise,
}

impl VndCombo {
    /// `(SDv, 2-opt)` is refused: every 2-opt move is already an SDv move.
    pub fn new(dv: DvScope, opt: Vectorwise) -> Result<Self> {
        if dv == DvScope::SDv && opt == Vectorwise::KOpt2 {
            return Err(MapError::InvalidArgument("sdv2 adds nothing: the 2-opt neighborhood lies inside SDv".into()));
        }
        Ok(VndCombo { dv, opt })
    }

    pub fn dv(&self) -> DvScope {
        self.dv
    }

    pub fn opt(&self) -> Vectorwise {
        self.opt
    }
}

/// DV first, then vectorwise and DV in turn until one of them leaves the
/// weight unchanged.
pub fn vnd(inst: &MapInstance, a: &Assignment, combo: VndCombo) -> Assignment {
    let mut cur = dv_search(inst, a, combo.dv);
    loop {
        let x = cur.weight(inst);
        cur = combo.opt.run(inst, &cur);
        if cur.weight(inst) == x {
            return cur;
        }
        let x = cur.weight(inst);
        cur = dv_search(inst, &cur, combo.dv);
        if cur.weight(inst) == x {
            return cur;
        }
    }
}

/// Any of the local searches, addressable by a short id such as `sdvv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocalSearch {
    Dv(DvScope),
    Opt(Vectorwise),
    Vnd(VndCombo),
}

impl LocalSearch {
    pub fn run(&self, inst: &MapInstance, a: &Assignment) -> Assignment {
        match *self {
            LocalSearch::Dv(scope) => dv_search(inst, a, scope),
            LocalSearch::Opt(v) => v.run(inst, a),
            LocalSearch::Vnd(c) => vnd(inst, a, c),
        }
    }
}

impl fmt::Display for LocalSearch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalSearch::Dv(scope) => write!(f, "{scope}"),
            LocalSearch::Opt(Vectorwise::VOpt) => f.write_str("vopt"),
            LocalSearch::Opt(v) => write!(f, "{}opt", v.suffix()),
            LocalSearch::Vnd(c) => write!(f, "{}{}", c.dv, c.opt.suffix()),
        }
    }
}

impl FromStr for LocalSearch {
    type Err = MapError;
    fn from_str(id: &str) -> Result<Self> {
        let scope = |p: &str| match p {
            "1dv" => Some(DvScope::OneDV),
            "2dv" => Some(DvScope::TwoDV),
            "sdv" => Some(DvScope::SDv),
            _ => None,
        };
        let opt = |p: &str| match p {
            "2" => Some(Vectorwise::KOpt2),
            "3" => Some(Vectorwise::KOpt3),
            "v" => Some(Vectorwise::VOpt),
            _ => None,
        };
        match id {
            "2opt" => return Ok(LocalSearch::Opt(Vectorwise::KOpt2)),
            "3opt" => return Ok(LocalSearch::Opt(Vectorwise::KOpt3)),
            "vopt" => return Ok(LocalSearch::Opt(Vectorwise::VOpt)),
            _ => {}
        }
        if let Some(sc) = scope(id) {
            return Ok(LocalSearch::Dv(sc));
        }
        if let (Some(sc), Some(op)) = (id.get(..3).and_then(scope), id.get(3..).and_then(opt)) {
            return VndCombo::new(sc, op).map(LocalSearch::Vnd);
        }
        Err(MapError::InvalidArgument(format!("unknown local search {id:?}")))
    }
}
