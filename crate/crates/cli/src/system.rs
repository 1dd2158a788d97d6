//! System-spec strings and the handles behind them. Grammar:
//! `beta:golden`, `beta:1.8`, `beta:9/5`, `beta:root(x^2-x-1,near=1.6)`,
//! `sgap:set=1,2`, `sgap:rule=pow2,max=64`, `sgap:rule=all,max=64`,
//! `coded:<generator file>`, `full:<alphabet size>`, and
//! `factor:<code file>:<base spec>`.

use shiftlab::beta::BetaShift;
use shiftlab::coded::{CodedSystem, GeneratorSet};
use shiftlab::decomp::{Decomposition, EpsilonOnly, FnComponent};
use shiftlab::factor::{BlockCode, FactorLanguage, transport_decomposition};
use shiftlab::lang::{Dfa, FullShift, LanguageOracle};
use shiftlab::sgap::{GapRule, SGapShift};
use shiftlab::word::Alphabet;
use shiftlab::{Error, Result};
use std::path::Path;
use std::sync::Arc;

pub enum SystemKind {
    Beta(Arc<BetaShift>),
    SGap(Arc<SGapShift>),
    Coded(Arc<CodedSystem>),
    Full(Arc<FullShift>),
    Factor {
        factor: Arc<FactorLanguage>,
        base: Box<SystemHandle>,
    },
}

pub struct SystemHandle {
    pub kind: SystemKind,
    oracle: Arc<dyn LanguageOracle>,
}

impl SystemHandle {
    pub fn parse(spec: &str, depth: usize) -> Result<Self> {
        let (head, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("bad system spec {spec:?}: expected kind:args")))?;
        match head {
            "beta" => {
                let shift = BetaShift::from_text(rest, depth)?;
                Ok(SystemHandle {
                    oracle: shift.clone(),
                    kind: SystemKind::Beta(shift),
                })
            }
            "sgap" => {
                let rule = parse_gap_rule(rest)?;
                let shift = SGapShift::new(rule)?;
                Ok(SystemHandle {
                    oracle: shift.clone(),
                    kind: SystemKind::SGap(shift),
                })
            }
            "coded" => {
                let generators = GeneratorSet::from_file(Path::new(rest))?;
                let system = CodedSystem::new(generators);
                Ok(SystemHandle {
                    oracle: system.clone(),
                    kind: SystemKind::Coded(system),
                })
            }
            "full" => {
                let size: usize = rest
                    .parse()
                    .map_err(|_| Error::Config(format!("bad alphabet size {rest:?}")))?;
                let shift = Arc::new(FullShift::new(Alphabet::new(size)?));
                Ok(SystemHandle {
                    oracle: shift.clone(),
                    kind: SystemKind::Full(shift),
                })
            }
            "factor" => {
                let (code_path, base_spec) = rest.split_once(':').ok_or_else(|| {
                    Error::Config(format!("bad factor spec {rest:?}: expected CODE:BASE"))
                })?;
                let code = BlockCode::load(Path::new(code_path))?;
                let base = SystemHandle::parse(base_spec, depth)?;
                let factor = FactorLanguage::new(base.oracle.clone(), code)?;
                Ok(SystemHandle {
                    oracle: factor.clone(),
                    kind: SystemKind::Factor {
                        factor,
                        base: Box::new(base),
                    },
                })
            }
            other => Err(Error::Config(format!("unknown system kind {other:?}"))),
        }
    }

    pub fn oracle(&self) -> &Arc<dyn LanguageOracle> {
        &self.oracle
    }

    pub fn family_id(&self) -> String {
        self.oracle.family_id()
    }

    /// The native decomposition of the system.
    pub fn decomposition(&self) -> Result<Decomposition> {
        match &self.kind {
            SystemKind::Beta(shift) => Ok(shift.decomposition()),
            SystemKind::SGap(shift) => Ok(shift.decomposition()),
            SystemKind::Coded(system) => Ok(system.decomposition()),
            SystemKind::Full(_) => Ok(Decomposition {
                prefixes: Arc::new(EpsilonOnly),
                good: Arc::new(FnComponent::new(|_w| true, "all words")),
                suffixes: Arc::new(EpsilonOnly),
                gap: 0,
                periodic_glue: true,
            }),
            SystemKind::Factor { factor, base } => {
                Ok(transport_decomposition(factor, &base.decomposition()?))
            }
        }
    }

    /// A strongly connected presentation when the system has one at
    /// hand (the recurrent core for gap shifts).
    pub fn stationary_presentation(&self) -> Option<Dfa> {
        match &self.kind {
            SystemKind::Beta(shift) => shift.automaton().cloned(),
            SystemKind::SGap(shift) => Some(shift.core_presentation().clone()),
            SystemKind::Full(shift) => shift.automaton().cloned(),
            SystemKind::Coded(_) | SystemKind::Factor { .. } => None,
        }
    }
}

pub fn parse_gap_rule(text: &str) -> Result<GapRule> {
    if let Some(list) = text.strip_prefix("set=") {
        let gaps = list
            .split(',')
            .map(|g| {
                g.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Config(format!("bad gap value {g:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        return GapRule::explicit(gaps);
    }
    if let Some(rest) = text.strip_prefix("rule=") {
        let mut name = rest;
        let mut trunc = 64u64;
        if let Some((n, max)) = rest.split_once(',') {
            name = n;
            let value = max.strip_prefix("max=").ok_or_else(|| {
                Error::Config(format!("expected max=<bound>, got {max:?}"))
            })?;
            trunc = value
                .parse()
                .map_err(|_| Error::Config(format!("bad truncation bound {value:?}")))?;
        }
        return match name {
            "pow2" => Ok(GapRule::PowersOfTwo { trunc }),
            "all" => Ok(GapRule::AllNaturals { trunc }),
            other => Err(Error::Config(format!("unknown gap rule {other:?}"))),
        };
    }
    Err(Error::Config(format!(
        "bad gap spec {text:?}: expected set=... or rule=..."
    )))
}
