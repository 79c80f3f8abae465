//! Closed-form locality/rate trade-off curves used as references.

use super::OracleError;
use crate::sigraph::SideInfoGraph;
use crate::{fmt_rat, rat, rat_int, Rat};

/// An exact `(locality, rate)` point with a provenance label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TradeoffPoint {
    pub r: Rat,
    pub beta: Rat,
    pub provenance: String,
}

/// The reference curves this suite knows in closed form.
#[derive(Debug, Clone)]
pub enum ReferenceFormula<'a> {
    /// Optimal rate at locality exactly 1: the fractional chromatic number
    /// of the interference graph (any code, not only linear).
    FracColoringAtOne { graph: &'a SideInfoGraph },
    /// Linear codes on the directed `N`-cycle:
    /// `β = max{N(N-1-r)/(N-2), N-1}`.
    NCycle { n: usize },
    /// The directed 3-cycle over any alphabet: `β = max{6-3r, 2}`.
    ThreeCycle,
    /// Scalar linear codes on minrank-(N-1) graphs with shortest cycle
    /// `N_c >= 3`: rate `N-1` needs `r = 2`, with optimal average
    /// `(N + N_c - 2)/N`; below that the only option is uncoded.
    MinrankNm1 { n: usize, nc: usize },
    /// Minimum message length at which the cycle corner
    /// `r = 2(N-1)/N, β = N-1` is attainable.
    MinMessageLengthForCycleLocality { n: usize },
}

/// Smallest message length achieving locality `2(N-1)/N` at rate `N-1` on
/// the directed `N`-cycle: `N` when odd, `N/2` when even.
pub fn min_message_length_for_cycle_locality(n: usize) -> usize {
    if n % 2 == 1 {
        n
    } else {
        n / 2
    }
}

/// Evaluates a reference curve at locality `r` (exact rationals).
pub fn reference_tradeoff(
    formula: &ReferenceFormula,
    r: &Rat,
) -> Result<TradeoffPoint, OracleError> {
    if r < &rat_int(1) {
        return Err(OracleError::UnknownFormula(
            "locality below 1 is unattainable".into(),
        ));
    }
    match formula {
        ReferenceFormula::FracColoringAtOne { graph } => {
            let (chif, _) = super::fractional_chromatic(&graph.interference_graph())?;
            Ok(TradeoffPoint {
                r: rat_int(1),
                beta: chif.clone(),
                provenance: format!(
                    "optimal rate at locality 1 = fractional chromatic number {} of the interference graph",
                    fmt_rat(&chif)
                ),
            })
        }
        ReferenceFormula::NCycle { n } => {
            if *n < 3 {
                return Err(OracleError::UnknownFormula(
                    "the cycle curve needs N >= 3".into(),
                ));
            }
            let n_i = *n as i64;
            let line = rat_int(n_i) * (rat_int(n_i - 1) - r.clone()) / rat_int(n_i - 2);
            let beta = line.max(rat_int(n_i - 1));
            Ok(TradeoffPoint {
                r: r.clone(),
                beta,
                provenance: format!(
                    "directed {n}-cycle linear trade-off max{{N(N-1-r)/(N-2), N-1}}"
                ),
            })
        }
        ReferenceFormula::ThreeCycle => {
            let beta = (rat_int(6) - rat_int(3) * r.clone()).max(rat_int(2));
            Ok(TradeoffPoint {
                r: r.clone(),
                beta,
                provenance: "directed 3-cycle trade-off max{6-3r, 2}".into(),
            })
        }
        ReferenceFormula::MinrankNm1 { n, nc } => {
            if *n < 3 || *nc < 3 || nc > n {
                return Err(OracleError::UnknownFormula(
                    "minrank-(N-1) curve needs 3 <= N_c <= N".into(),
                ));
            }
            let n_i = *n as i64;
            let beta = if r >= &rat_int(2) {
                rat_int(n_i - 1)
            } else {
                rat_int(n_i)
            };
            Ok(TradeoffPoint {
                r: r.clone(),
                beta,
                provenance: format!(
                    "scalar codes on minrank-(N-1) graphs: rate N-1 at r = 2 with optimal r_avg = {}",
                    fmt_rat(&rat(n_i + *nc as i64 - 2, n_i))
                ),
            })
        }
        ReferenceFormula::MinMessageLengthForCycleLocality { n } => {
            if *n < 3 {
                return Err(OracleError::UnknownFormula(
                    "the message-length bound needs N >= 3".into(),
                ));
            }
            let n_i = *n as i64;
            let m = min_message_length_for_cycle_locality(*n);
            Ok(TradeoffPoint {
                r: rat(2 * (n_i - 1), n_i),
                beta: rat_int(n_i - 1),
                provenance: format!(
                    "locality 2(N-1)/N at rate N-1 requires message length M >= {m}"
                ),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_cycle_curve_values() {
        let f = ReferenceFormula::ThreeCycle;
        assert_eq!(
            reference_tradeoff(&f, &rat_int(1)).unwrap().beta,
            rat_int(3)
        );
        assert_eq!(reference_tradeoff(&f, &rat(7, 6)).unwrap().beta, rat(5, 2));
        assert_eq!(reference_tradeoff(&f, &rat(4, 3)).unwrap().beta, rat_int(2));
        assert_eq!(
            reference_tradeoff(&f, &rat_int(2)).unwrap().beta,
            rat_int(2)
        );
    }

    #[test]
    fn n_cycle_curve_values() {
        let f = ReferenceFormula::NCycle { n: 5 };
        assert_eq!(reference_tradeoff(&f, &rat(8, 5)).unwrap().beta, rat_int(4));
        assert_eq!(
            reference_tradeoff(&f, &rat_int(1)).unwrap().beta,
            rat_int(5)
        );
        assert_eq!(
            reference_tradeoff(&f, &rat_int(2)).unwrap().beta,
            rat_int(4)
        );
    }

    #[test]
    fn frac_coloring_reference_on_the_three_cycle() {
        let g = SideInfoGraph::directed_cycle(3);
        let f = ReferenceFormula::FracColoringAtOne { graph: &g };
        let p = reference_tradeoff(&f, &rat_int(1)).unwrap();
        assert_eq!(p.beta, rat_int(3));
    }

    #[test]
    fn minimum_message_lengths_for_the_cycle_corner() {
        assert_eq!(min_message_length_for_cycle_locality(3), 3);
        assert_eq!(min_message_length_for_cycle_locality(4), 2);
        assert_eq!(min_message_length_for_cycle_locality(5), 5);
        assert_eq!(min_message_length_for_cycle_locality(6), 3);
        assert_eq!(min_message_length_for_cycle_locality(7), 7);
    }

    #[test]
    fn locality_below_one_is_rejected() {
        assert!(matches!(
            reference_tradeoff(&ReferenceFormula::ThreeCycle, &rat(1, 2)),
            Err(OracleError::UnknownFormula(_))
        ));
    }
}
