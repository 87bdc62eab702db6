//! Expected verdicts for every bundled example. `resp corpus` and the
//! acceptance suite both run these; each check re-derives the published
//! facts about its fixture and reports the first mismatch.

use super::entry;
use crate::causation::{
    cness_cause, direct_ness_cause, hp_atomic_cause, hp_cause_set, ness_cause, CausalPath, Event,
    Limits, Witness,
};
use crate::dsl::{parse_model, parse_scenario, Scenario};
use crate::model::{CausalModel, Context};
use crate::responsibility::{
    causation_probability, degree_of_responsibility, outcome_probability, responsible, Rational,
    ResponsibilityDef, ResponsibilitySetting,
};
use crate::CausationDef;
use num_traits::One;

type Check = fn(&Limits) -> Result<(), String>;

/// Runs every corpus check, returning one named result per fixture.
pub fn verify(limits: &Limits) -> Vec<(&'static str, Result<(), String>)> {
    let table: &[(&'static str, Check)] = &[
        ("ex1_assassins", check_assassins),
        ("ex2_latepreemption", check_late_preemption),
        ("ex3_counterfactual", check_counterfactual),
        ("ex4_loader", check_loader),
        ("ex4b_loader_variant", check_loader_variant),
        ("ex5_bombing", check_bombing),
        ("ex6_typicality", check_typicality),
        ("firing_squad", check_firing_squad),
        ("frankfurt", check_frankfurt),
        ("rosenberg_glymour", check_rosenberg_glymour),
    ];
    table
        .iter()
        .map(|&(name, check)| (name, check(limits)))
        .collect()
}

fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

fn ensure(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn model_of(name: &str) -> Result<(CausalModel, Context), String> {
    let text = entry(name)
        .and_then(|e| e.model)
        .ok_or_else(|| format!("no model text for {name}"))?;
    parse_model(text).map_err(|e| format!("{name} failed to parse: {e:#?}"))
}

fn scenario_of(name: &str) -> Result<Scenario, String> {
    let text = entry(name)
        .and_then(|e| e.scenario)
        .ok_or_else(|| format!("no scenario text for {name}"))?;
    parse_scenario(text).map_err(|e| format!("{name} failed to parse: {e:#?}"))
}

fn agent_of<'a>(
    scenario: &'a Scenario,
    name: &str,
) -> Result<&'a ResponsibilitySetting, String> {
    scenario
        .agent(name)
        .ok_or_else(|| format!("agent {name} missing"))
}

fn path(vars: &[&str]) -> CausalPath {
    CausalPath {
        variables: vars.iter().map(|s| s.to_string()).collect(),
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Overdetermination: the shot is a direct NESS cause on its own, an HP
/// cause only jointly, and both probability-sensitive definitions blame
/// under positive uncertainty.
fn check_assassins(limits: &Limits) -> Result<(), String> {
    let (model, ctx) = model_of("ex1_assassins")?;
    let (a1, v) = (Event::new("A1", "1"), Event::new("V", "1"));
    let direct = direct_ness_cause(&model, &ctx, &a1, &v, limits).map_err(err)?;
    ensure(direct.holds, "A1=1 should be a direct NESS cause of V=1")?;
    ensure(
        direct.witness == Some(Witness::DirectNess { support: vec![] }),
        "direct NESS witness should be the empty set",
    )?;
    let single = hp_cause_set(&model, &ctx, &[a1.clone()], &v, limits).map_err(err)?;
    ensure(!single.holds, "A1=1 alone should not be an HP cause")?;
    let pair = hp_cause_set(
        &model,
        &ctx,
        &[a1, Event::new("A2", "1")],
        &v,
        limits,
    )
    .map_err(err)?;
    ensure(pair.holds, "{A1=1, A2=1} should be an HP cause")?;

    let scenario = scenario_of("ex1_assassins")?;
    for agent in ["Assassin1", "Assassin2"] {
        let setting = agent_of(&scenario, agent)?;
        for def in [ResponsibilityDef::Bvh, ResponsibilityDef::Hk] {
            let verdict = responsible(setting, def, limits).map_err(err)?;
            ensure(
                verdict.responsible,
                &format!("{agent} should be responsible under {def}"),
            )?;
        }
    }
    Ok(())
}

/// Late preemption separates all four definitions on the first shot and
/// exonerates the preempted one everywhere.
fn check_late_preemption(limits: &Limits) -> Result<(), String> {
    let (model, ctx) = model_of("ex2_latepreemption")?;
    let (a1, v) = (Event::new("A1", "1"), Event::new("V", "1"));
    ensure(
        !direct_ness_cause(&model, &ctx, &a1, &v, limits).map_err(err)?.holds,
        "A1=1 should not be a direct NESS cause",
    )?;
    let paths = ness_cause(&model, &ctx, &a1, &v, limits).map_err(err)?;
    ensure(
        paths == vec![path(&["A1", "BH1", "V"])],
        "NESS path should be {A1,BH1,V}",
    )?;
    let cness = cness_cause(&model, &ctx, &a1, &v, limits).map_err(err)?;
    ensure(
        cness.witness
            == Some(Witness::Cness {
                path: path(&["A1", "BH1", "V"]),
                counterfactual: "0".into(),
            }),
        "CNESS witness should be path {A1,BH1,V} with counterfactual 0",
    )?;
    let hp = hp_atomic_cause(&model, &ctx, &a1, &v, limits).map_err(err)?;
    ensure(hp.holds, "A1=1 should be an HP cause")?;
    match hp.witness {
        Some(Witness::Hp { conjuncts, support, .. }) => {
            ensure(
                conjuncts == vec![Event::new("A1", "1")]
                    && support == vec![Event::new("BH2", "0")],
                "HP witness should freeze BH2=0",
            )?;
        }
        _ => return Err("missing HP witness".into()),
    }
    let a2 = Event::new("A2", "1");
    for def in CausationDef::ALL {
        let verdict =
            crate::causation::decide_cause(&model, &ctx, &a2, &v, def, limits).map_err(err)?;
        ensure(
            !verdict.holds,
            &format!("A2=1 should not be a cause under {def}"),
        )?;
    }
    Ok(())
}

/// Holding fire: a NESS cause through both hits that neither CNESS nor HP
/// accepts, plus the epistemic fixture that separates bvh from beckers.
fn check_counterfactual(limits: &Limits) -> Result<(), String> {
    let (model, ctx) = model_of("ex3_counterfactual")?;
    let (a1, v) = (Event::new("A1", "0"), Event::new("V", "1"));
    let paths = ness_cause(&model, &ctx, &a1, &v, limits).map_err(err)?;
    ensure(
        paths == vec![path(&["A1", "BH1", "BH2", "V"])],
        "NESS path should be {A1,BH1,BH2,V}",
    )?;
    ensure(
        !cness_cause(&model, &ctx, &a1, &v, limits).map_err(err)?.holds,
        "A1=0 should not be a CNESS cause",
    )?;
    ensure(
        !hp_atomic_cause(&model, &ctx, &a1, &v, limits).map_err(err)?.holds,
        "A1=0 should not be an HP cause",
    )?;

    let scenario = scenario_of("ex3_counterfactual")?;
    let setting = agent_of(&scenario, "Assassin1")?;
    let bvh = responsible(setting, ResponsibilityDef::Bvh, limits).map_err(err)?;
    ensure(bvh.responsible, "Assassin1 should be responsible under bvh")?;
    let beckers = responsible(setting, ResponsibilityDef::Beckers, limits).map_err(err)?;
    ensure(
        !beckers.responsible,
        "Assassin1 should not be responsible under beckers",
    )?;
    Ok(())
}

/// Base loader: the lone actor is the HP cause, the joint one is not.
fn check_loader(limits: &Limits) -> Result<(), String> {
    let (model, ctx) = model_of("ex4_loader")?;
    let d = Event::new("D", "1");
    ensure(
        hp_atomic_cause(&model, &ctx, &Event::new("C", "1"), &d, limits)
            .map_err(err)?
            .holds,
        "C=1 should be an HP cause of D=1",
    )?;
    ensure(
        !hp_atomic_cause(&model, &ctx, &Event::new("A", "1"), &d, limits)
            .map_err(err)?
            .holds,
        "A=1 should not be an HP cause of D=1",
    )?;
    Ok(())
}

/// Loader variant: HP accepts {A=1, B=0} (so A=1 atomically) while the
/// NESS family rejects A=1.
fn check_loader_variant(limits: &Limits) -> Result<(), String> {
    let (model, ctx) = model_of("ex4b_loader_variant")?;
    let d = Event::new("D", "1");
    let a = Event::new("A", "1");
    let pair = hp_cause_set(
        &model,
        &ctx,
        &[a.clone(), Event::new("B", "0")],
        &d,
        limits,
    )
    .map_err(err)?;
    ensure(pair.holds, "{A=1, B=0} should be an HP cause of D=1")?;
    ensure(
        hp_atomic_cause(&model, &ctx, &a, &d, limits).map_err(err)?.holds,
        "A=1 should be an atomic HP cause of D=1",
    )?;
    ensure(
        ness_cause(&model, &ctx, &a, &d, limits).map_err(err)?.is_empty(),
        "A=1 should not be a NESS cause of D=1",
    )?;
    ensure(
        !cness_cause(&model, &ctx, &a, &d, limits).map_err(err)?.holds,
        "A=1 should not be a CNESS cause of D=1",
    )?;
    Ok(())
}

/// Bombing: exact causation and outcome probabilities, the three verdicts,
/// and the per-scenario causation facts.
fn check_bombing(limits: &Limits) -> Result<(), String> {
    let scenario = scenario_of("ex5_bombing")?;
    let setting = agent_of(&scenario, "Assassin2")?;
    let b = Event::new("B", "1");
    for def in [CausationDef::Ness, CausationDef::Cness, CausationDef::Hp] {
        let planted =
            causation_probability(&setting.epistemic, &Event::new("S2", "1"), &b, def, limits)
                .map_err(err)?;
        ensure(
            planted == ratio(2, 5),
            &format!("P_cause(S2=1) should be 2/5 under {def}"),
        )?;
        let withheld =
            causation_probability(&setting.epistemic, &Event::new("S2", "0"), &b, def, limits)
                .map_err(err)?;
        ensure(
            withheld == ratio(3, 5),
            &format!("P_cause(S2=0) should be 3/5 under {def}"),
        )?;
    }
    ensure(
        outcome_probability(&setting.epistemic, &Event::new("S2", "1"), &b).map_err(err)?
            == Rational::one(),
        "P_out(S2=1) should be 1",
    )?;
    ensure(
        outcome_probability(&setting.epistemic, &Event::new("S2", "0"), &b).map_err(err)?
            == ratio(3, 5),
        "P_out(S2=0) should be 3/5",
    )?;
    ensure(
        !responsible(setting, ResponsibilityDef::Bvh, limits)
            .map_err(err)?
            .responsible,
        "bvh should exonerate",
    )?;
    ensure(
        responsible(setting, ResponsibilityDef::Hk, limits)
            .map_err(err)?
            .responsible,
        "hk should blame",
    )?;
    let beckers = responsible(setting, ResponsibilityDef::Beckers, limits).map_err(err)?;
    ensure(
        beckers.responsible && beckers.epistemic.branch == Some(1),
        "beckers should blame through the outcome-probability branch",
    )?;

    // the four ways the uncertainty could have resolved
    let model = &scenario.model;
    let sig = model.signature().clone();
    let with = |u1: &str, u2: &str| Context::new(sig.clone(), &[("U1", u1), ("U2", u2)]);
    // scenario 1 (only the second bomb): S2=1 is a CNESS cause
    let lone = with("0", "1").map_err(err)?;
    ensure(
        cness_cause(model, &lone, &Event::new("S2", "1"), &b, limits)
            .map_err(err)?
            .holds,
        "scenario 1: S2=1 should be a CNESS cause",
    )?;
    // scenario 2 (both bombs, the first masks the second): S2=1 causes
    // nothing
    let both = with("1", "1").map_err(err)?;
    ensure(
        ness_cause(model, &both, &Event::new("S2", "1"), &b, limits)
            .map_err(err)?
            .is_empty(),
        "scenario 2: S2=1 should not be a NESS cause",
    )?;
    ensure(
        !hp_atomic_cause(model, &both, &Event::new("S2", "1"), &b, limits)
            .map_err(err)?
            .holds,
        "scenario 2: S2=1 should not be part of any HP cause",
    )?;
    // scenario 4 (only the first bomb): the non-planting lets D3 detonate
    let first = with("1", "0").map_err(err)?;
    ensure(
        cness_cause(model, &first, &Event::new("S2", "0"), &b, limits)
            .map_err(err)?
            .holds,
        "scenario 4: S2=0 should be a CNESS cause",
    )?;
    for cause in [Event::new("D3", "1"), Event::new("S2", "0")] {
        ensure(
            hp_atomic_cause(model, &first, &cause, &b, limits)
                .map_err(err)?
                .holds,
            &format!("scenario 4: {cause} should be an HP cause"),
        )?;
    }
    Ok(())
}

/// Typicality: the assassin who thought the other unlikely to shoot carries
/// the larger degree; a conjunctive outcome reverses the Eells-strength
/// ordering.
fn check_typicality(limits: &Limits) -> Result<(), String> {
    let alpha = ratio(1, 2);
    let scenario = scenario_of("ex6_typicality")?;
    let d1 = degree_of_responsibility(agent_of(&scenario, "Assassin1")?, &alpha, limits)
        .map_err(err)?;
    let d2 = degree_of_responsibility(agent_of(&scenario, "Assassin2")?, &alpha, limits)
        .map_err(err)?;
    ensure(
        d1.degree == ratio(9, 10) + alpha.clone(),
        "d(Assassin1) should be 9/10 + alpha",
    )?;
    ensure(
        d2.degree == ratio(1, 10) + alpha.clone(),
        "d(Assassin2) should be 1/10 + alpha",
    )?;
    ensure(d1.degree > d2.degree, "d(Assassin1) should exceed d(Assassin2)")?;
    ensure(
        d1.cs_eells == ratio(9, 10) && d2.cs_eells == ratio(1, 10),
        "disjunctive CS_e should be 9/10 vs 1/10",
    )?;

    // same beliefs, conjunctive outcome: the ordering flips
    let conjunctive = "\
model {
  exo U1 in {0, 1}
  exo U2 in {0, 1}
  var A1 in {0, 1} := U1
  var A2 in {0, 1} := U2
  var V in {0, 1} := A1 & A2
}
context { U1 = 1  U2 = 1 }
outcome V == 1
agent Assassin1 {
  action A1
  epistemic { world 0.1 { U2 = 1 }  world 0.9 { U2 = 0 } }
}
agent Assassin2 {
  action A2
  epistemic { world 0.9 { U1 = 1 }  world 0.1 { U1 = 0 } }
}
";
    let scenario = parse_scenario(conjunctive).map_err(|e| format!("{e:#?}"))?;
    let c1 = degree_of_responsibility(agent_of(&scenario, "Assassin1")?, &alpha, limits)
        .map_err(err)?;
    let c2 = degree_of_responsibility(agent_of(&scenario, "Assassin2")?, &alpha, limits)
        .map_err(err)?;
    ensure(
        c1.cs_eells == ratio(1, 10) && c2.cs_eells == ratio(9, 10),
        "conjunctive CS_e should be 1/10 vs 9/10",
    )?;
    ensure(
        c1.cs_eells < c2.cs_eells,
        "the conjunctive variant should reverse the CS_e ordering",
    )?;
    Ok(())
}

/// Firing squad: the death is unavoidable, so only the causation-probability
/// branch assigns responsibility, and the degree collapses to alpha.
fn check_firing_squad(limits: &Limits) -> Result<(), String> {
    let scenario = scenario_of("firing_squad")?;
    let setting = agent_of(&scenario, "Assassin1")?;
    ensure(
        !responsible(setting, ResponsibilityDef::Hk, limits)
            .map_err(err)?
            .responsible,
        "hk should exonerate",
    )?;
    let beckers = responsible(setting, ResponsibilityDef::Beckers, limits).map_err(err)?;
    ensure(
        beckers.responsible && beckers.epistemic.branch == Some(2),
        "beckers should blame through the causation-probability branch",
    )?;
    ensure(
        beckers.epistemic.causation_probs
            == vec![
                ("0".to_string(), ratio(0, 1)),
                ("1".to_string(), Rational::one())
            ],
        "causation probabilities should be 1 vs 0",
    )?;
    let alpha = ratio(1, 2);
    let report = degree_of_responsibility(setting, &alpha, limits).map_err(err)?;
    ensure(report.degree == alpha, "degree should be exactly alpha")?;
    Ok(())
}

/// Frankfurt: acting on one's own is a cause under every path-based
/// definition, and both epistemic conditions hold.
fn check_frankfurt(limits: &Limits) -> Result<(), String> {
    let scenario = scenario_of("frankfurt")?;
    let (model, ctx) = (&scenario.model, &scenario.context);
    let (jp, sd) = (Event::new("JP", "1"), Event::new("SD", "1"));
    ensure(
        !ness_cause(model, ctx, &jp, &sd, limits).map_err(err)?.is_empty(),
        "JP=1 should be a NESS cause of SD=1",
    )?;
    ensure(
        cness_cause(model, ctx, &jp, &sd, limits).map_err(err)?.holds,
        "JP=1 should be a CNESS cause of SD=1",
    )?;
    ensure(
        hp_atomic_cause(model, ctx, &jp, &sd, limits).map_err(err)?.holds,
        "JP=1 should be an HP cause of SD=1",
    )?;
    let setting = agent_of(&scenario, "Jones")?;
    for def in [ResponsibilityDef::Bvh, ResponsibilityDef::Hk] {
        let verdict = responsible(setting, def, limits).map_err(err)?;
        ensure(
            verdict.responsible && verdict.epistemic.alternative.is_some(),
            &format!("the epistemic condition of {def} should hold"),
        )?;
    }
    Ok(())
}

/// A variable on a redundant pathway: CNESS keeps it, HP drops it, and the
/// common source passes both.
fn check_rosenberg_glymour(limits: &Limits) -> Result<(), String> {
    let (model, ctx) = model_of("rosenberg_glymour")?;
    let y = Event::new("Y", "1");
    let x = Event::new("X", "1");
    ensure(
        !hp_atomic_cause(&model, &ctx, &x, &y, limits).map_err(err)?.holds,
        "X=1 should not be an HP cause of Y=1",
    )?;
    ensure(
        cness_cause(&model, &ctx, &x, &y, limits).map_err(err)?.holds,
        "X=1 should be a CNESS cause of Y=1",
    )?;
    let d = Event::new("D", "1");
    ensure(
        hp_atomic_cause(&model, &ctx, &d, &y, limits).map_err(err)?.holds,
        "D=1 should be an HP cause of Y=1",
    )?;
    ensure(
        cness_cause(&model, &ctx, &d, &y, limits).map_err(err)?.holds,
        "D=1 should be a CNESS cause of Y=1",
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_matches_its_expected_verdicts() {
        for (name, result) in verify(&Limits::default()) {
            if let Err(e) = result {
                panic!("{name}: {e}");
            }
        }
    }
}
