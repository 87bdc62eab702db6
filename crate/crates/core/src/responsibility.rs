//! Moral responsibility over an agent's epistemic state.
//!
//! An epistemic state is an exact-rational probability distribution over
//! causal settings that share one signature. Three responsibility
//! definitions are decided — each pairs a causal condition in the actual
//! setting with a probabilistic condition over the epistemic state — and a
//! graded degree of responsibility combines two causal-strength measures.
//!
//! Probabilities are exact [`Rational`]s throughout; nothing here rounds.

use crate::causation::{
    cness_cause, decide_cause, direct_ness_cause, hp_atomic_cause, CausalVerdict, CausationDef,
    Event, Limits, QueryError,
};
use crate::model::{CausalModel, Context, ModelError, Signature, Value, VarId};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// Exact probability type used for all epistemic weights and results.
pub type Rational = BigRational;

/// Renders a rational as an exact decimal when the denominator is of the
/// form `2^a 5^b` (so `3/5` prints as `0.6`), and as `num/den` otherwise.
pub fn format_rational(r: &Rational) -> String {
    let (num, den) = (r.numer(), r.denom());
    if den.is_one() {
        return num.to_string();
    }
    let mut d = den.clone();
    let two = num_bigint::BigInt::from(2u32);
    let five = num_bigint::BigInt::from(5u32);
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return format!("{num}/{den}");
    }
    // scale to 10^k with k = max(twos, fives)
    let k = twos.max(fives);
    let scaled = num * two.pow(k - twos) * five.pow(k - fives);
    let negative = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let k = k as usize;
    let (int, frac) = if digits.len() > k {
        let (i, f) = digits.split_at(digits.len() - k);
        (i.to_string(), f.to_string())
    } else {
        ("0".to_string(), format!("{digits:0>k$}"))
    };
    format!("{}{int}.{frac}", if negative { "-" } else { "" })
}

/// One possibility the agent entertains: a causal setting with its
/// subjective weight.
#[derive(Debug, Clone)]
pub struct World {
    pub weight: Rational,
    pub model: CausalModel,
    pub context: Context,
}

/// A normalized distribution over causal settings sharing one signature.
#[derive(Debug, Clone)]
pub struct EpistemicState {
    worlds: Vec<World>,
}

impl EpistemicState {
    /// Validates that the worlds are nonempty, share a signature, have
    /// non-negative weights, and that the weights sum to exactly 1.
    pub fn new(worlds: Vec<World>) -> Result<Self, QueryError> {
        let first = worlds.first().ok_or(QueryError::EmptyEpistemicState)?;
        let sig = first.model.signature().clone();
        let mut sum = Rational::zero();
        for world in &worlds {
            if *world.model.signature().as_ref() != *sig
                || *world.context.signature().as_ref() != *sig
            {
                return Err(QueryError::Model(ModelError::SignatureMismatch));
            }
            if world.weight.is_negative() {
                return Err(QueryError::NegativeWeight(format_rational(&world.weight)));
            }
            sum += &world.weight;
        }
        if !sum.is_one() {
            return Err(QueryError::WeightSum(format_rational(&sum)));
        }
        Ok(EpistemicState { worlds })
    }

    /// A degenerate state: full weight on one setting.
    pub fn certain(model: CausalModel, context: Context) -> Result<Self, QueryError> {
        EpistemicState::new(vec![World {
            weight: Rational::one(),
            model,
            context,
        }])
    }

    pub fn worlds(&self) -> &[World] {
        &self.worlds
    }

    pub fn signature(&self) -> &Arc<Signature> {
        self.worlds[0].model.signature()
    }
}

fn resolve_endogenous(sig: &Signature, event: &Event) -> Result<(VarId, Value), QueryError> {
    let var = sig.require_var(&event.variable)?;
    if !sig.is_endogenous(var) {
        return Err(QueryError::Model(ModelError::NotEndogenous(
            event.variable.clone(),
        )));
    }
    Ok((var, sig.value_index(var, &event.value)?))
}

/// Probability that the outcome holds after the agent performs `action`:
/// the total weight of worlds where `[A <- a] O = o` holds.
pub fn outcome_probability(
    state: &EpistemicState,
    action: &Event,
    outcome: &Event,
) -> Result<Rational, QueryError> {
    let sig = state.signature().clone();
    let a = resolve_endogenous(&sig, action)?;
    let o = resolve_endogenous(&sig, outcome)?;
    if a.0 == o.0 {
        return Err(QueryError::SameVariable(action.variable.clone()));
    }
    let mut total = Rational::zero();
    for world in state.worlds() {
        let solution = world.model.solve_with(&world.context, &[a]);
        if solution.value(o.0) == o.1 {
            total += &world.weight;
        }
    }
    Ok(total)
}

/// Probability that the performed action causes the outcome: the total
/// weight of worlds where `A = a` is a cause of `O = o` under `definition`
/// in the setting intervened with `A <- a`.
pub fn causation_probability(
    state: &EpistemicState,
    action: &Event,
    outcome: &Event,
    definition: CausationDef,
    limits: &Limits,
) -> Result<Rational, QueryError> {
    let sig = state.signature().clone();
    let a = resolve_endogenous(&sig, action)?;
    let o = resolve_endogenous(&sig, outcome)?;
    if a.0 == o.0 {
        return Err(QueryError::SameVariable(action.variable.clone()));
    }
    let mut total = Rational::zero();
    for world in state.worlds() {
        let intervened = world.model.intervene_ids(&[a]);
        let verdict = decide_cause(
            &intervened,
            &world.context,
            action,
            outcome,
            definition,
            limits,
        )?;
        if verdict.holds {
            total += &world.weight;
        }
    }
    Ok(total)
}

/// Eells-style causal strength: how much performing `value` raises the
/// outcome probability over performing `alternative`.
pub fn causal_strength_eells(
    state: &EpistemicState,
    action: &str,
    value: &str,
    alternative: &str,
    outcome: &Event,
) -> Result<Rational, QueryError> {
    let performed = outcome_probability(state, &Event::new(action, value), outcome)?;
    let withheld = outcome_probability(state, &Event::new(action, alternative), outcome)?;
    Ok(performed - withheld)
}

/// Actual-causation strength: how much more likely `value` is to be a CNESS
/// cause of the outcome (under its own intervention) than `alternative` is
/// under its.
pub fn causal_strength_actual(
    state: &EpistemicState,
    action: &str,
    value: &str,
    alternative: &str,
    outcome: &Event,
    limits: &Limits,
) -> Result<Rational, QueryError> {
    let performed = causation_probability(
        state,
        &Event::new(action, value),
        outcome,
        CausationDef::Cness,
        limits,
    )?;
    let withheld = causation_probability(
        state,
        &Event::new(action, alternative),
        outcome,
        CausationDef::Cness,
        limits,
    )?;
    Ok(performed - withheld)
}

/// Selects one of the three responsibility definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResponsibilityDef {
    /// Direct NESS causation plus a strictly higher direct-NESS causation
    /// probability than some alternative action.
    Bvh,
    /// HP causation plus a strictly higher outcome probability than some
    /// alternative action.
    Hk,
    /// CNESS causation plus either a strict outcome-probability drop under
    /// some alternative, or equal outcome probability and a strict
    /// CNESS-causation-probability drop.
    Beckers,
}

impl ResponsibilityDef {
    pub const ALL: [ResponsibilityDef; 3] = [
        ResponsibilityDef::Bvh,
        ResponsibilityDef::Hk,
        ResponsibilityDef::Beckers,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ResponsibilityDef::Bvh => "bvh",
            ResponsibilityDef::Hk => "hk",
            ResponsibilityDef::Beckers => "beckers",
        }
    }
}

impl std::fmt::Display for ResponsibilityDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ResponsibilityDef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bvh" => Ok(ResponsibilityDef::Bvh),
            "hk" => Ok(ResponsibilityDef::Hk),
            "beckers" => Ok(ResponsibilityDef::Beckers),
            other => Err(format!(
                "unknown responsibility definition `{other}` (expected bvh, hk, or beckers)"
            )),
        }
    }
}

/// A responsibility query: the actual setting, the agent's action variable,
/// the outcome event, and the agent's epistemic state at decision time.
#[derive(Debug, Clone)]
pub struct ResponsibilitySetting {
    pub model: CausalModel,
    pub context: Context,
    pub action: String,
    pub outcome: Event,
    pub epistemic: EpistemicState,
}

impl ResponsibilitySetting {
    fn check(&self) -> Result<(VarId, VarId, Value), QueryError> {
        let sig = self.model.signature();
        if *self.epistemic.signature().as_ref() != *sig.as_ref() {
            return Err(QueryError::Model(ModelError::SignatureMismatch));
        }
        let action = sig.require_var(&self.action)?;
        if !sig.is_endogenous(action) {
            return Err(QueryError::Model(ModelError::NotEndogenous(
                self.action.clone(),
            )));
        }
        let (outcome_var, outcome_value) = resolve_endogenous(sig, &self.outcome)?;
        if action == outcome_var {
            return Err(QueryError::SameVariable(self.action.clone()));
        }
        Ok((action, outcome_var, outcome_value))
    }
}

/// The probabilistic side of a responsibility verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpistemicEvidence {
    /// Outcome probability per action value, in range declaration order.
    pub outcome_probs: Vec<(String, Rational)>,
    /// Causation probability per action value (direct NESS for `bvh`, CNESS
    /// for `beckers`, unused by `hk`).
    pub causation_probs: Vec<(String, Rational)>,
    /// First alternative action value witnessing the probabilistic
    /// condition, if any.
    pub alternative: Option<String>,
    /// Which disjunct fired for `beckers`: 1 (outcome drop) or 2 (equal
    /// outcome, causation drop).
    pub branch: Option<u8>,
}

/// Outcome of a responsibility query. Both conditions are always evaluated:
/// `causal_evidence` covers the actual setting and `epistemic` the
/// probabilistic condition; `responsible` is their conjunction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResponsibilityVerdict {
    pub responsible: bool,
    pub definition: ResponsibilityDef,
    /// The performed action as an event `A = a` from the actual solution.
    pub action: Event,
    pub causal_evidence: CausalVerdict,
    pub epistemic: EpistemicEvidence,
}

fn probability_profile(
    state: &EpistemicState,
    action: VarId,
    outcome: &Event,
    causation: Option<CausationDef>,
    limits: &Limits,
) -> Result<(Vec<(String, Rational)>, Vec<(String, Rational)>), QueryError> {
    let sig = state.signature().clone();
    let name = sig.name(action);
    let mut outcome_probs = Vec::new();
    let mut causation_probs = Vec::new();
    for token in sig.range(action) {
        let event = Event::new(name, token);
        outcome_probs.push((
            token.clone(),
            outcome_probability(state, &event, outcome)?,
        ));
        if let Some(def) = causation {
            causation_probs.push((
                token.clone(),
                causation_probability(state, &event, outcome, def, limits)?,
            ));
        }
    }
    Ok((outcome_probs, causation_probs))
}

/// Decides whether the agent is responsible for the outcome under the given
/// definition. Alternatives are searched in range declaration order, and
/// for `beckers` the outcome-drop disjunct is tried before the equal-outcome
/// disjunct for each alternative.
pub fn responsible(
    setting: &ResponsibilitySetting,
    definition: ResponsibilityDef,
    limits: &Limits,
) -> Result<ResponsibilityVerdict, QueryError> {
    let (action_var, _, _) = setting.check()?;
    let actual = setting.model.solve(&setting.context)?;
    let performed = actual.value(action_var);
    let sig = setting.model.signature().clone();
    let action = Event::new(sig.name(action_var), sig.value_token(action_var, performed));

    let causal_evidence = match definition {
        ResponsibilityDef::Bvh => direct_ness_cause(
            &setting.model,
            &setting.context,
            &action,
            &setting.outcome,
            limits,
        )?,
        ResponsibilityDef::Hk => hp_atomic_cause(
            &setting.model,
            &setting.context,
            &action,
            &setting.outcome,
            limits,
        )?,
        ResponsibilityDef::Beckers => cness_cause(
            &setting.model,
            &setting.context,
            &action,
            &setting.outcome,
            limits,
        )?,
    };

    let causation_def = match definition {
        ResponsibilityDef::Bvh => Some(CausationDef::DirectNess),
        ResponsibilityDef::Hk => None,
        ResponsibilityDef::Beckers => Some(CausationDef::Cness),
    };
    let (outcome_probs, causation_probs) = probability_profile(
        &setting.epistemic,
        action_var,
        &setting.outcome,
        causation_def,
        limits,
    )?;

    let performed = performed as usize;
    let mut alternative = None;
    let mut branch = None;
    for (i, (token, _)) in outcome_probs.iter().enumerate() {
        if i == performed {
            continue;
        }
        let fired = match definition {
            ResponsibilityDef::Bvh => causation_probs[performed].1 > causation_probs[i].1,
            ResponsibilityDef::Hk => outcome_probs[performed].1 > outcome_probs[i].1,
            ResponsibilityDef::Beckers => {
                if outcome_probs[performed].1 > outcome_probs[i].1 {
                    branch = Some(1);
                    true
                } else if outcome_probs[performed].1 == outcome_probs[i].1
                    && causation_probs[performed].1 > causation_probs[i].1
                {
                    branch = Some(2);
                    true
                } else {
                    false
                }
            }
        };
        if fired {
            alternative = Some(token.clone());
            break;
        }
    }
    if alternative.is_none() {
        branch = None;
    }

    Ok(ResponsibilityVerdict {
        responsible: causal_evidence.holds && alternative.is_some(),
        definition,
        action,
        causal_evidence,
        epistemic: EpistemicEvidence {
            outcome_probs,
            causation_probs,
            alternative,
            branch,
        },
    })
}

/// A graded responsibility result. `degree` is zero exactly when the agent
/// is not responsible under the combined (CNESS-based) definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub responsible: bool,
    pub degree: Rational,
    /// Outcome-probability gap between the performed action and the chosen
    /// benchmark alternative.
    pub cs_eells: Rational,
    /// CNESS-causation-probability gap between the two.
    pub cs_actual: Rational,
    /// The performed action value.
    pub action: String,
    /// The benchmark alternative: among the outcome-probability minimizers,
    /// the one with the lowest causation probability.
    pub alternative: Option<String>,
    /// True when the benchmark was picked from several equally good
    /// candidates by range declaration order.
    pub tie: bool,
}

/// Degree of responsibility: zero for non-responsible agents; otherwise
/// `CS_e + alpha * max(0, CS_ac)` against the benchmark alternative.
pub fn degree_of_responsibility(
    setting: &ResponsibilitySetting,
    alpha: &Rational,
    limits: &Limits,
) -> Result<DegreeReport, QueryError> {
    let verdict = responsible(setting, ResponsibilityDef::Beckers, limits)?;
    let action = verdict.action.value.clone();
    if !verdict.responsible {
        return Ok(DegreeReport {
            responsible: false,
            degree: Rational::zero(),
            cs_eells: Rational::zero(),
            cs_actual: Rational::zero(),
            action,
            alternative: None,
            tie: false,
        });
    }
    let outcome_probs = &verdict.epistemic.outcome_probs;
    let causation_probs = &verdict.epistemic.causation_probs;
    let min_outcome = outcome_probs.iter().map(|(_, p)| p).min().unwrap();
    let pool: Vec<usize> = (0..outcome_probs.len())
        .filter(|&i| outcome_probs[i].1 == *min_outcome)
        .collect();
    let min_causation = pool
        .iter()
        .map(|&i| &causation_probs[i].1)
        .min()
        .unwrap()
        .clone();
    let winners: Vec<usize> = pool
        .iter()
        .copied()
        .filter(|&i| causation_probs[i].1 == min_causation)
        .collect();
    let benchmark = winners[0];
    let performed = outcome_probs
        .iter()
        .position(|(token, _)| *token == action)
        .unwrap();
    let cs_eells = &outcome_probs[performed].1 - &outcome_probs[benchmark].1;
    let cs_actual = &causation_probs[performed].1 - &causation_probs[benchmark].1;
    let degree = &cs_eells + alpha * cs_actual.clone().max(Rational::zero());
    Ok(DegreeReport {
        responsible: true,
        degree,
        cs_eells,
        cs_actual,
        action,
        alternative: Some(outcome_probs[benchmark].0.clone()),
        tie: winners.len() > 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfix;

    fn ratio(num: i64, den: i64) -> Rational {
        Rational::new(num.into(), den.into())
    }

    fn limits() -> Limits {
        Limits::default()
    }

    /// Two assassins, agent is the first, uncertain whether the second
    /// shoots (probability `other`).
    fn assassin_state(other: Rational) -> EpistemicState {
        let (shoots, ctx_shoots) = testfix::assassins("1", "1");
        let (idle, ctx_idle) = testfix::assassins("1", "0");
        EpistemicState::new(vec![
            World {
                weight: other.clone(),
                model: shoots,
                context: ctx_shoots,
            },
            World {
                weight: Rational::one() - other,
                model: idle,
                context: ctx_idle,
            },
        ])
        .unwrap()
    }

    fn assassin_setting(other: Rational) -> ResponsibilitySetting {
        let (model, context) = testfix::assassins("1", "1");
        ResponsibilitySetting {
            model,
            context,
            action: "A1".into(),
            outcome: Event::new("V", "1"),
            epistemic: assassin_state(other),
        }
    }

    #[test]
    fn weights_must_sum_to_one() {
        let (model, context) = testfix::assassins("1", "1");
        let err = EpistemicState::new(vec![World {
            weight: ratio(1, 2),
            model,
            context,
        }])
        .unwrap_err();
        assert_eq!(err, QueryError::WeightSum("0.5".into()));
    }

    #[test]
    fn worlds_must_share_a_signature() {
        let (a, ctx_a) = testfix::assassins("1", "1");
        let (b, ctx_b) = testfix::bombing("1", "1");
        let err = EpistemicState::new(vec![
            World {
                weight: ratio(1, 2),
                model: a,
                context: ctx_a,
            },
            World {
                weight: ratio(1, 2),
                model: b,
                context: ctx_b,
            },
        ])
        .unwrap_err();
        assert_eq!(err, QueryError::Model(ModelError::SignatureMismatch));
    }

    #[test]
    fn outcome_probability_overdetermination() {
        let state = assassin_state(ratio(7, 10));
        let outcome = Event::new("V", "1");
        assert_eq!(
            outcome_probability(&state, &Event::new("A1", "1"), &outcome).unwrap(),
            Rational::one()
        );
        assert_eq!(
            outcome_probability(&state, &Event::new("A1", "0"), &outcome).unwrap(),
            ratio(7, 10)
        );
    }

    #[test]
    fn causation_probability_overdetermination() {
        let state = assassin_state(ratio(7, 10));
        let outcome = Event::new("V", "1");
        for def in [
            CausationDef::DirectNess,
            CausationDef::Ness,
            CausationDef::Cness,
        ] {
            assert_eq!(
                causation_probability(&state, &Event::new("A1", "1"), &outcome, def, &limits())
                    .unwrap(),
                Rational::one(),
                "shooting under {def}"
            );
            assert_eq!(
                causation_probability(&state, &Event::new("A1", "0"), &outcome, def, &limits())
                    .unwrap(),
                Rational::zero(),
                "not shooting under {def}"
            );
        }
    }

    #[test]
    fn all_definitions_hold_in_overdetermination() {
        let setting = assassin_setting(ratio(7, 10));
        for def in ResponsibilityDef::ALL {
            let verdict = responsible(&setting, def, &limits()).unwrap();
            assert!(verdict.responsible, "{def}");
            assert_eq!(verdict.epistemic.alternative.as_deref(), Some("0"));
        }
    }

    #[test]
    fn bombing_scenario_one() {
        // second assassin bombs (S2=1), believing the first bombed with
        // probability 0.6; the target dies either way, so only the
        // causation-probability definitions blame the act
        let worlds = EpistemicState::new(vec![
            World {
                weight: ratio(3, 5),
                model: testfix::bombing("1", "1").0,
                context: testfix::bombing("1", "1").1,
            },
            World {
                weight: ratio(2, 5),
                model: testfix::bombing("0", "1").0,
                context: testfix::bombing("0", "1").1,
            },
        ])
        .unwrap();
        let (model, context) = testfix::bombing("0", "1");
        let setting = ResponsibilitySetting {
            model,
            context,
            action: "S2".into(),
            outcome: Event::new("B", "1"),
            epistemic: worlds,
        };

        let outcome = Event::new("B", "1");
        assert_eq!(
            outcome_probability(&setting.epistemic, &Event::new("S2", "1"), &outcome).unwrap(),
            Rational::one()
        );
        assert_eq!(
            outcome_probability(&setting.epistemic, &Event::new("S2", "0"), &outcome).unwrap(),
            ratio(3, 5)
        );
        for def in [CausationDef::Ness, CausationDef::Cness, CausationDef::Hp] {
            assert_eq!(
                causation_probability(
                    &setting.epistemic,
                    &Event::new("S2", "1"),
                    &outcome,
                    def,
                    &limits()
                )
                .unwrap(),
                ratio(2, 5),
                "{def}"
            );
            assert_eq!(
                causation_probability(
                    &setting.epistemic,
                    &Event::new("S2", "0"),
                    &outcome,
                    def,
                    &limits()
                )
                .unwrap(),
                ratio(3, 5),
                "{def}"
            );
        }

        // S2=1 is not a direct NESS cause of B=1 (S2 is not a parent of B)
        let bvh = responsible(&setting, ResponsibilityDef::Bvh, &limits()).unwrap();
        assert!(!bvh.responsible);
        assert!(!bvh.causal_evidence.holds);

        let hk = responsible(&setting, ResponsibilityDef::Hk, &limits()).unwrap();
        assert!(hk.responsible);

        let beckers = responsible(&setting, ResponsibilityDef::Beckers, &limits()).unwrap();
        assert!(beckers.responsible);
        assert_eq!(beckers.epistemic.branch, Some(1));

        // degree: benchmark is S2=0 (outcome prob 3/5 < 1); CS_e = 2/5,
        // CS_ac = 2/5 - 3/5 < 0 so the actual-strength term clamps to 0
        let report = degree_of_responsibility(&setting, &ratio(1, 2), &limits()).unwrap();
        assert_eq!(report.degree, ratio(2, 5));
        assert_eq!(report.cs_eells, ratio(2, 5));
        assert_eq!(report.cs_actual, ratio(-1, 5));
        assert_eq!(report.alternative.as_deref(), Some("0"));
        assert!(!report.tie);
    }

    #[test]
    fn firing_squad_equal_outcome_branch() {
        // late preemption, agent knows the second shooter fires: the death
        // happens regardless, HK exonerates, the combined definition blames
        // through the causation-probability branch
        let (model, context) = testfix::late_preemption("1", "1");
        let epistemic = {
            let (m, c) = testfix::late_preemption("1", "1");
            EpistemicState::certain(m, c).unwrap()
        };
        let setting = ResponsibilitySetting {
            model,
            context,
            action: "A1".into(),
            outcome: Event::new("V", "1"),
            epistemic,
        };

        let hk = responsible(&setting, ResponsibilityDef::Hk, &limits()).unwrap();
        assert!(hk.causal_evidence.holds);
        assert!(!hk.responsible);

        let beckers = responsible(&setting, ResponsibilityDef::Beckers, &limits()).unwrap();
        assert!(beckers.responsible);
        assert_eq!(beckers.epistemic.branch, Some(2));
        assert_eq!(
            beckers.epistemic.outcome_probs,
            vec![
                ("0".to_string(), Rational::one()),
                ("1".to_string(), Rational::one())
            ]
        );
        assert_eq!(
            beckers.epistemic.causation_probs,
            vec![
                ("0".to_string(), Rational::zero()),
                ("1".to_string(), Rational::one())
            ]
        );

        // degree = 0 + alpha * (1 - 0)
        let alpha = ratio(1, 2);
        let report = degree_of_responsibility(&setting, &alpha, &limits()).unwrap();
        assert_eq!(report.degree, alpha);
        assert_eq!(report.cs_eells, Rational::zero());
        assert_eq!(report.cs_actual, Rational::one());
        assert_eq!(report.alternative.as_deref(), Some("0"));
    }

    #[test]
    fn degree_zero_without_responsibility() {
        // agent did not shoot; the victim survives, nothing to answer for
        let (model, context) = testfix::assassins("0", "0");
        let epistemic = {
            let (m, c) = testfix::assassins("0", "0");
            EpistemicState::certain(m, c).unwrap()
        };
        let setting = ResponsibilitySetting {
            model,
            context,
            action: "A1".into(),
            outcome: Event::new("V", "1"),
            epistemic,
        };
        let report = degree_of_responsibility(&setting, &ratio(1, 2), &limits()).unwrap();
        assert!(!report.responsible);
        assert_eq!(report.degree, Rational::zero());
        assert_eq!(report.alternative, None);
    }

    #[test]
    fn typicality_disjunctive_degrees() {
        // disjunctive overdetermination: the agent who thought the other
        // assassin unlikely to shoot carries the larger degree
        let alpha = ratio(1, 2);
        let d1 = degree_of_responsibility(&assassin_setting(ratio(1, 10)), &alpha, &limits())
            .unwrap();
        let d2 = degree_of_responsibility(&assassin_setting(ratio(9, 10)), &alpha, &limits())
            .unwrap();
        assert_eq!(d1.degree, ratio(9, 10) + alpha.clone());
        assert_eq!(d2.degree, ratio(1, 10) + alpha);
        assert!(d1.degree > d2.degree);
    }

    #[test]
    fn causal_strengths_match_degree_components() {
        let setting = assassin_setting(ratio(7, 10));
        let outcome = Event::new("V", "1");
        let cs_e =
            causal_strength_eells(&setting.epistemic, "A1", "1", "0", &outcome).unwrap();
        assert_eq!(cs_e, ratio(3, 10));
        let cs_ac =
            causal_strength_actual(&setting.epistemic, "A1", "1", "0", &outcome, &limits())
                .unwrap();
        assert_eq!(cs_ac, Rational::one());
        let report =
            degree_of_responsibility(&setting, &ratio(1, 2), &limits()).unwrap();
        assert_eq!(report.cs_eells, cs_e);
        assert_eq!(report.cs_actual, cs_ac);
        assert_eq!(report.degree, ratio(3, 10) + ratio(1, 2));
    }

    #[test]
    fn format_rational_decimals_and_fractions() {
        assert_eq!(format_rational(&ratio(3, 5)), "0.6");
        assert_eq!(format_rational(&ratio(1, 8)), "0.125");
        assert_eq!(format_rational(&ratio(7, 10)), "0.7");
        assert_eq!(format_rational(&ratio(1, 3)), "1/3");
        assert_eq!(format_rational(&ratio(2, 1)), "2");
        assert_eq!(format_rational(&Rational::zero()), "0");
        assert_eq!(format_rational(&ratio(-3, 4)), "-0.75");
        assert_eq!(format_rational(&ratio(5, 4)), "1.25");
        assert_eq!(format_rational(&ratio(-1, 6)), "-1/6");
    }
}
