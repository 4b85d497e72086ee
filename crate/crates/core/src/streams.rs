//! Stream automata and what a costrength does for them: a lawful
//! costrength lifts any automaton to one on `F(states)` whose outputs are
//! the original outputs of an extracted state, and the same structure
//! solves corecursive systems "up to F".
//!
//! Infinite streams never appear as data. A finite automaton's behavior is
//! eventually periodic, so an exact finite representation exists: the
//! [`Lasso`]. Two states behave identically if and only if their canonical
//! lassos are equal, which turns every statement about streams here into a
//! decidable check.

use crate::costrength::{check_costrength, phi, psi, Copoint, Costrength};
use crate::error::{Error, Result};
use crate::finset::{all_functions, compose, pair, product, FinFun, FinSet};
use crate::functor::FunctorExpr;
use crate::report::{counterexample, eq_or, LawReport};

/// A deterministic stream automaton: each state emits one letter and moves
/// to exactly one successor.
#[derive(Debug, Clone, PartialEq)]
pub struct StreamAutomaton {
    pub states: FinSet,
    pub alphabet: FinSet,
    pub out: FinFun,
    pub next: FinFun,
}

impl StreamAutomaton {
    pub fn new(states: FinSet, alphabet: FinSet, out: FinFun, next: FinFun) -> Result<Self> {
        if out.dom() != &states || out.cod() != &alphabet {
            return Err(Error::mismatch(
                "automaton output map",
                format!("{states} -> {alphabet}"),
                format!("{} -> {}", out.dom(), out.cod()),
            ));
        }
        if next.dom() != &states || next.cod() != &states {
            return Err(Error::mismatch(
                "automaton transition map",
                format!("{states} -> {states}"),
                format!("{} -> {}", next.dom(), next.cod()),
            ));
        }
        Ok(StreamAutomaton {
            states,
            alphabet,
            out,
            next,
        })
    }

    fn require_state(&self, c: usize) -> Result<()> {
        if c >= self.states.size() {
            return Err(Error::precondition(format!(
                "state index {c} out of range for {}",
                self.states
            )));
        }
        Ok(())
    }
}

/// The first `length` outputs emitted from some starting state, as indices
/// into the automaton's alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BehaviorPrefix {
    pub outputs: Vec<usize>,
    pub length: usize,
}

/// An eventually periodic stream `prefix . cycle^omega` in its unique
/// minimal form: the cycle is primitive (not a repetition of a shorter
/// word) and the prefix is as short as possible. Minimality makes equality
/// of lassos coincide with equality of the streams they denote.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso {
    prefix: Vec<usize>,
    cycle: Vec<usize>,
}

impl Lasso {
    /// Canonicalizes an arbitrary prefix/cycle presentation.
    pub fn new(prefix: Vec<usize>, cycle: Vec<usize>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::precondition(
                "a lasso cycle must be nonempty".to_string(),
            ));
        }
        let mut prefix = prefix;
        let mut cycle = cycle;
        // reduce the cycle to its primitive root
        for d in 1..=cycle.len() {
            if cycle.len() % d == 0 && cycle.chunks(d).all(|w| w == &cycle[..d]) {
                cycle.truncate(d);
                break;
            }
        }
        // absorb matching tail letters of the prefix into the cycle: the
        // streams p.a.(c.a)^w and p.(a.c)^w are equal
        while let Some(&last) = prefix.last() {
            if last != *cycle.last().expect("cycle is nonempty") {
                break;
            }
            prefix.pop();
            let a = cycle.pop().expect("cycle is nonempty");
            cycle.insert(0, a);
        }
        Ok(Lasso { prefix, cycle })
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    /// The letter at position `i` of the denoted stream.
    pub fn at(&self, i: usize) -> usize {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// The first `n` letters of the denoted stream.
    pub fn take(&self, n: usize) -> BehaviorPrefix {
        BehaviorPrefix {
            outputs: (0..n).map(|i| self.at(i)).collect(),
            length: n,
        }
    }

    /// The stream `head . self`.
    pub fn cons(&self, head: usize) -> Lasso {
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(head);
        prefix.extend_from_slice(&self.prefix);
        Lasso::new(prefix, self.cycle.clone()).expect("cycle stays nonempty")
    }

    /// Renders the stream with alphabet labels, `prefix | cycle`.
    pub fn render(&self, alphabet: &FinSet) -> String {
        let word = |w: &[usize]| {
            w.iter()
                .map(|&i| alphabet.label(i).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("{} | {}", word(&self.prefix), word(&self.cycle))
    }
}

/// The first `n` outputs emitted from state `c`.
pub fn behavior(a: &StreamAutomaton, c: usize, n: usize) -> Result<BehaviorPrefix> {
    a.require_state(c)?;
    let mut outputs = Vec::with_capacity(n);
    let mut state = c;
    for _ in 0..n {
        outputs.push(a.out.apply(state));
        state = a.next.apply(state);
    }
    Ok(BehaviorPrefix { outputs, length: n })
}

/// The exact behavior of state `c`, found by walking the deterministic
/// orbit until a state repeats.
pub fn behavior_lasso(a: &StreamAutomaton, c: usize) -> Result<Lasso> {
    a.require_state(c)?;
    let mut first_visit = vec![usize::MAX; a.states.size()];
    let mut outputs = Vec::new();
    let mut state = c;
    loop {
        if first_visit[state] != usize::MAX {
            let split = first_visit[state];
            let cycle = outputs.split_off(split);
            return Lasso::new(outputs, cycle);
        }
        first_visit[state] = outputs.len();
        outputs.push(a.out.apply(state));
        state = a.next.apply(state);
    }
}

fn require_cartesian(c: &Costrength, what: &str) -> Result<()> {
    if c.action.name() != "cart" {
        return Err(Error::precondition(format!(
            "{what} needs the cartesian action, found {:?}",
            c.action.name()
        )));
    }
    Ok(())
}

/// Lifts an automaton along a costrength for `F`: the new state space is
/// `F(states)` and the structure map is the composite
///
/// ```text
/// F(C) --F<out,next>--> F(M x C) --cst--> M x F(C)
/// ```
///
/// The lifted transition always equals `F(next)`; this consequence of the
/// laws is re-checked on the concrete tables before returning.
pub fn lift(a: &StreamAutomaton, c: &Costrength) -> Result<StreamAutomaton> {
    require_cartesian(c, "lifting")?;
    let law = check_costrength(c)?;
    if !law.is_pass() {
        return Err(Error::precondition(format!(
            "costrength fails its laws: {:?}",
            law.counterexample
        )));
    }
    let cap = c.objects.budget().max_size;
    let structure = pair(&a.out, &a.next)?;
    let f_structure = c.functor.apply_mor(&structure, cap)?;
    let cst = c.component_at(&a.alphabet, &a.states)?;
    let lifted = compose(cst, &f_structure)?;
    let f_states = c.functor.apply_obj(&a.states, cap)?;
    let p = product(&a.alphabet, &f_states);
    let out = compose(&p.proj1(), &lifted)?;
    let next = compose(&p.proj2(), &lifted)?;
    let f_next = c.functor.apply_mor(&a.next, cap)?;
    if next != f_next {
        return Err(Error::mismatch(
            "lifted transition map",
            format!("the functor image of next, {f_next}"),
            next.to_string(),
        ));
    }
    StreamAutomaton::new(f_states, a.alphabet.clone(), out, next)
}

/// Checks that lifting hides structure without disturbing output: from any
/// wrapped state `w`, the lifted automaton emits exactly the stream of the
/// extracted state `eps(w)`, where `eps` is the copoint carried by the
/// costrength. Verified lasso-exactly, so it holds at every prefix length,
/// and additionally spot-checked at length `n`.
pub fn extraction_semantics_report(
    a: &StreamAutomaton,
    c: &Costrength,
    n: usize,
) -> Result<LawReport> {
    let mut report = LawReport::new("extraction-semantics");
    let eps = phi(c)?;
    let lifted = lift(a, c)?;
    let extract = eps.epsilon.component_at(&a.states)?;
    for w in 0..lifted.states.size() {
        let base = extract.apply(w);
        let lhs = behavior_lasso(&lifted, w)?;
        let rhs = behavior_lasso(a, base)?;
        report.tick();
        report.bump("states");
        if lhs != rhs {
            report.fail(counterexample(
                "extraction",
                &[("w", lifted.states.label(w).to_string())],
                format!(
                    "lifted behavior {} but extracted state behaves as {}",
                    lhs.render(&a.alphabet),
                    rhs.render(&a.alphabet)
                ),
            ));
            return Ok(report);
        }
        report.tick();
        if behavior(&lifted, w, n)? != behavior(a, base, n)? {
            report.fail(counterexample(
                "extraction-prefix",
                &[("w", lifted.states.label(w).to_string()), ("n", n.to_string())],
                "prefix disagrees with the lasso comparison".to_string(),
            ));
            return Ok(report);
        }
    }
    report.seal();
    Ok(report)
}

/// Checks that automaton morphisms survive lifting: if `h` maps `a` to `b`
/// compatibly with outputs and transitions, then `F(h)` does the same for
/// the lifted automata. The morphism property of `h` itself is a
/// precondition and its failure is an error, not a report entry.
pub fn morphism_preservation_report(
    a: &StreamAutomaton,
    b: &StreamAutomaton,
    h: &FinFun,
    c: &Costrength,
    n: usize,
) -> Result<LawReport> {
    if a.alphabet != b.alphabet {
        return Err(Error::mismatch(
            "automaton alphabets",
            a.alphabet.to_string(),
            b.alphabet.to_string(),
        ));
    }
    if h.dom() != &a.states || h.cod() != &b.states {
        return Err(Error::mismatch(
            "morphism boundary",
            format!("{} -> {}", a.states, b.states),
            format!("{} -> {}", h.dom(), h.cod()),
        ));
    }
    for x in 0..a.states.size() {
        if b.out.apply(h.apply(x)) != a.out.apply(x) || h.apply(a.next.apply(x)) != b.next.apply(h.apply(x))
        {
            return Err(Error::precondition(format!(
                "h is not an automaton morphism at state {}",
                a.states.label(x)
            )));
        }
    }
    let mut report = LawReport::new("morphism-preservation");
    let cap = c.objects.budget().max_size;
    let lifted_a = lift(a, c)?;
    let lifted_b = lift(b, c)?;
    let fh = c.functor.apply_mor(h, cap)?;
    if let Some(cx) = eq_or(
        "lifted-outputs",
        &[],
        &compose(&lifted_b.out, &fh)?,
        &lifted_a.out,
    ) {
        report.fail(cx);
        return Ok(report);
    }
    report.tick();
    if let Some(cx) = eq_or(
        "lifted-transitions",
        &[],
        &compose(&lifted_b.next, &fh)?,
        &compose(&fh, &lifted_a.next)?,
    ) {
        report.fail(cx);
        return Ok(report);
    }
    report.tick();
    for w in 0..lifted_a.states.size() {
        report.tick();
        report.bump("behavior-prefixes");
        if behavior(&lifted_a, w, n)? != behavior(&lifted_b, fh.apply(w), n)? {
            report.fail(counterexample(
                "behavior-preservation",
                &[("w", lifted_a.states.label(w).to_string())],
                "image state emits a different prefix".to_string(),
            ));
            return Ok(report);
        }
    }
    report.seal();
    Ok(report)
}

/// A corecursive system of equations "up to F": each variable unfolds to
/// one output letter and an F-shaped combination of variables, and the
/// copoint says how to extract a variable from the combination.
#[derive(Debug, Clone)]
pub struct UpToSystem {
    pub carrier: FinSet,
    pub alphabet: FinSet,
    pub functor: FunctorExpr,
    pub copoint: Copoint,
    pub map: FinFun,
}

impl UpToSystem {
    pub fn new(
        carrier: FinSet,
        alphabet: FinSet,
        functor: FunctorExpr,
        copoint: Copoint,
        map: FinFun,
    ) -> Result<Self> {
        if copoint.functor() != &functor {
            return Err(Error::mismatch(
                "up-to copoint",
                format!("a copoint of {functor}"),
                format!("a copoint of {}", copoint.functor()),
            ));
        }
        let cap = copoint.universe().budget().max_size;
        let fx = functor.apply_obj(&carrier, cap)?;
        let expected = product(&alphabet, &fx).object;
        if map.dom() != &carrier || map.cod() != &expected {
            return Err(Error::mismatch(
                "up-to structure map",
                format!("{carrier} -> {expected}"),
                format!("{} -> {}", map.dom(), map.cod()),
            ));
        }
        Ok(UpToSystem {
            carrier,
            alphabet,
            functor,
            copoint,
            map,
        })
    }
}

/// Transports a natural family's component to a set outside its universe
/// but of a tabulated size, along the index-order bijection. Naturality
/// makes the transported component the only possible extension.
fn transported_component(
    eps: &Copoint,
    target: &FinSet,
    cap: usize,
) -> Result<FinFun> {
    if let Ok(c) = eps.epsilon.component_at(target) {
        return Ok(c.clone());
    }
    let source = eps
        .universe()
        .objects()
        .iter()
        .find(|x| x.size() == target.size())
        .ok_or_else(|| {
            Error::precondition(format!(
                "the copoint universe has no object of size {}",
                target.size()
            ))
        })?;
    let theta = FinFun::from_fn(source.clone(), target.clone(), |i| i);
    let f_theta = eps.functor().apply_mor(&theta, cap)?;
    let f_theta_inv = f_theta.inverse()?;
    compose(&theta, &compose(eps.epsilon.component_at(source)?, &f_theta_inv)?)
}

/// The behaviors of all states as a fresh finite set, together with the
/// map sending each state to its behavior.
fn behavior_object(a: &StreamAutomaton) -> Result<(FinSet, FinFun, Vec<Lasso>)> {
    let lassos: Vec<Lasso> = (0..a.states.size())
        .map(|x| behavior_lasso(a, x))
        .collect::<Result<_>>()?;
    let mut distinct: Vec<Lasso> = Vec::new();
    for l in &lassos {
        if !distinct.contains(l) {
            distinct.push(l.clone());
        }
    }
    let labels: Vec<String> = distinct.iter().map(|l| l.render(&a.alphabet)).collect();
    let b = FinSet::new(labels)?;
    let table: Vec<usize> = lassos
        .iter()
        .map(|l| distinct.iter().position(|d| d == l).expect("collected above"))
        .collect();
    let beh = FinFun::new(a.states.clone(), b.clone(), table)?;
    Ok((b, beh, distinct))
}

/// Checks the defining diagram of an up-to solution against a candidate
/// automaton on the system's carrier: for every variable `x`, the behavior
/// of `x` must be its declared head followed by the behavior extracted
/// from the F-image of the behavior map.
fn diagram_holds(s: &UpToSystem, candidate: &StreamAutomaton) -> Result<bool> {
    let cap = s.copoint.universe().budget().max_size;
    let (b, beh, distinct) = behavior_object(candidate)?;
    let f_beh = s.functor.apply_mor(&beh, cap)?;
    let eps_b = transported_component(&s.copoint, &b, cap)?;
    let fx = s.functor.apply_obj(&s.carrier, cap)?;
    let p = product(&s.alphabet, &fx);
    for x in 0..s.carrier.size() {
        let (head, wrapped) = p.decode(s.map.apply(x));
        let tail = &distinct[eps_b.apply(f_beh.apply(wrapped))];
        if distinct[beh.apply(x)] != tail.cons(head) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Solves an up-to system: the resulting automaton emits the declared head
/// of each variable and steps to the variable the copoint extracts from
/// the F-combination. The report verifies the defining diagram
/// lasso-exactly, so the solution is correct at every prefix length.
pub fn solve_up_to(s: &UpToSystem) -> Result<(StreamAutomaton, LawReport)> {
    let nat = s.copoint.check()?;
    if !nat.is_pass() {
        return Err(Error::precondition(format!(
            "the copoint must be natural: {:?}",
            nat.counterexample
        )));
    }
    let cap = s.copoint.universe().budget().max_size;
    let fx = s.functor.apply_obj(&s.carrier, cap)?;
    let p = product(&s.alphabet, &fx);
    let out = compose(&p.proj1(), &s.map)?;
    let eps_x = s.copoint.epsilon.component_at(&s.carrier)?;
    let next = compose(eps_x, &compose(&p.proj2(), &s.map)?)?;
    let automaton = StreamAutomaton::new(s.carrier.clone(), s.alphabet.clone(), out, next)?;

    let mut report = LawReport::new("up-to-solution");
    let (b, beh, distinct) = behavior_object(&automaton)?;
    let f_beh = s.functor.apply_mor(&beh, cap)?;
    let eps_b = transported_component(&s.copoint, &b, cap)?;
    for x in 0..s.carrier.size() {
        let (head, wrapped) = p.decode(s.map.apply(x));
        let solution = &distinct[beh.apply(x)];
        report.tick();
        report.bump("head-checks");
        if solution.at(0) != head {
            report.fail(counterexample(
                "up-to-head",
                &[("x", s.carrier.label(x).to_string())],
                format!(
                    "solution emits {} first, the system declares {}",
                    s.alphabet.label(solution.at(0)),
                    s.alphabet.label(head)
                ),
            ));
            return Ok((automaton, report));
        }
        let tail = &distinct[eps_b.apply(f_beh.apply(wrapped))];
        report.tick();
        report.bump("tail-checks");
        if *solution != tail.cons(head) {
            report.fail(counterexample(
                "up-to-tail",
                &[("x", s.carrier.label(x).to_string())],
                format!(
                    "solution behaves as {} but the diagram demands {}",
                    solution.render(&s.alphabet),
                    tail.cons(head).render(&s.alphabet)
                ),
            ));
            return Ok((automaton, report));
        }
    }
    report.seal();
    Ok((automaton, report))
}

/// Exhaustively checks that the up-to solution is unique in behavior:
/// every automaton on the carrier that satisfies the defining diagram has
/// the same behavior lassos, state by state. Exponential in the carrier,
/// intended for small systems.
pub fn up_to_uniqueness_report(s: &UpToSystem) -> Result<LawReport> {
    let (solution, sol_report) = solve_up_to(s)?;
    let mut report = LawReport::new("up-to-uniqueness");
    report.absorb("solution", sol_report);
    let sol_lassos: Vec<Lasso> = (0..s.carrier.size())
        .map(|x| behavior_lasso(&solution, x))
        .collect::<Result<_>>()?;
    for out in all_functions(&s.carrier, &s.alphabet) {
        for next in all_functions(&s.carrier, &s.carrier) {
            let candidate =
                StreamAutomaton::new(s.carrier.clone(), s.alphabet.clone(), out.clone(), next)?;
            report.bump("candidates");
            if !diagram_holds(s, &candidate)? {
                continue;
            }
            report.bump("diagram-solutions");
            for x in 0..s.carrier.size() {
                report.tick();
                let lasso = behavior_lasso(&candidate, x)?;
                if lasso != sol_lassos[x] {
                    report.fail(counterexample(
                        "up-to-uniqueness",
                        &[("x", s.carrier.label(x).to_string())],
                        format!(
                            "a second diagram solution behaves as {} instead of {}",
                            lasso.render(&s.alphabet),
                            sol_lassos[x].render(&s.alphabet)
                        ),
                    ));
                    return Ok(report);
                }
            }
        }
    }
    report.seal();
    Ok(report)
}

/// Builds the costrength an up-to system implicitly uses, for callers that
/// want to relate the solver to the lifting machinery.
pub fn up_to_costrength(s: &UpToSystem) -> Result<Costrength> {
    psi(&s.copoint, s.copoint.universe(), s.copoint.universe())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::cartesian;
    use crate::catalogue::writer_symmetry_costrength;
    use crate::costrength::identity_costrength;
    use crate::nat::NatFamily;
    use crate::universe::{Budget, Universe};

    fn letters(n: usize) -> FinSet {
        FinSet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()).unwrap()
    }

    /// The default object universe, widened by the given extras and a cap
    /// large enough for the functors a test applies.
    fn small(cap: usize, extra: &[FinSet]) -> Universe {
        Universe::with_budget(
            Universe::default_small().objects().to_vec(),
            Budget::default().with_max_size(cap),
        )
        .extended(extra.iter().cloned())
    }

    fn automaton(outputs: &[usize], next: &[usize], alphabet: &FinSet) -> StreamAutomaton {
        let states = FinSet::canonical(outputs.len());
        StreamAutomaton::new(
            states.clone(),
            alphabet.clone(),
            FinFun::new(states.clone(), alphabet.clone(), outputs.to_vec()).unwrap(),
            FinFun::new(states.clone(), states, next.to_vec()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn constant_and_alternating_behaviors() {
        let ab = letters(2);
        let constant = automaton(&[0], &[0], &ab);
        assert_eq!(
            behavior_lasso(&constant, 0).unwrap(),
            Lasso::new(vec![], vec![0]).unwrap()
        );
        let flip = automaton(&[0, 1], &[1, 0], &ab);
        assert_eq!(
            behavior_lasso(&flip, 0).unwrap(),
            Lasso::new(vec![], vec![0, 1]).unwrap()
        );
        assert_eq!(behavior(&flip, 0, 5).unwrap().outputs, vec![0, 1, 0, 1, 0]);
        assert_eq!(behavior(&flip, 0, 0).unwrap().outputs, Vec::<usize>::new());
        assert!(behavior(&flip, 7, 1).is_err());
    }

    #[test]
    fn lassos_canonicalize_to_the_minimal_form() {
        // a repeated cycle collapses to its primitive root
        assert_eq!(
            Lasso::new(vec![], vec![0, 1, 0, 1]).unwrap(),
            Lasso::new(vec![], vec![0, 1]).unwrap()
        );
        // trailing prefix letters matching the cycle end are absorbed:
        // a b (c b)^w  =  a (b c)^w
        let l = Lasso::new(vec![0, 1], vec![2, 1]).unwrap();
        assert_eq!(l.prefix(), &[0]);
        assert_eq!(l.cycle(), &[1, 2]);
        // rotations with different starts denote different streams
        assert_ne!(
            Lasso::new(vec![], vec![0, 1]).unwrap(),
            Lasso::new(vec![], vec![1, 0]).unwrap()
        );
        assert!(Lasso::new(vec![0], vec![]).is_err());
    }

    #[test]
    fn lasso_expansion_matches_direct_behavior() {
        let ab = letters(3);
        let a = automaton(&[0, 1, 2, 1], &[1, 2, 3, 2], &ab);
        for state in 0..4 {
            let lasso = behavior_lasso(&a, state).unwrap();
            for n in [0, 1, 5, 17] {
                assert_eq!(lasso.take(n), behavior(&a, state, n).unwrap());
            }
        }
    }

    #[test]
    fn identity_costrength_lifts_to_the_same_automaton() {
        let ab = letters(2);
        let u = small(64, &[ab.clone()]);
        let c = identity_costrength(cartesian(), &u, &u).unwrap();
        let a = automaton(&[0, 1, 0], &[1, 2, 0], &ab);
        let lifted = lift(&a, &c).unwrap();
        assert_eq!(lifted, a);
    }

    #[test]
    fn writer_lift_keeps_the_annotation_and_runs_the_base_automaton() {
        let ab = letters(2);
        let u = small(256, &[ab.clone()]);
        let s = FinSet::canonical(2);
        let c = writer_symmetry_costrength(&s, &u, &u).unwrap();
        let a = automaton(&[0, 1, 1], &[1, 2, 1], &ab);
        let lifted = lift(&a, &c).unwrap();
        let sq = product(&s, &a.states);
        for is in 0..2 {
            for q in 0..3 {
                let w = sq.encode(is, q);
                assert_eq!(lifted.out.apply(w), a.out.apply(q));
                assert_eq!(lifted.next.apply(w), sq.encode(is, a.next.apply(q)));
            }
        }
    }

    #[test]
    fn lifting_rejects_a_corrupted_costrength() {
        let u = small(64, &[]);
        let s = FinSet::canonical(2);
        let mut c = writer_symmetry_costrength(&s, &u, &u).unwrap();
        let comp = &mut c.components_mut()[14];
        let cod = comp.cod().clone();
        let dom = comp.dom().clone();
        let table: Vec<usize> = comp.table().iter().map(|&v| (v + 1) % cod.size()).collect();
        *comp = FinFun::new(dom, cod, table).unwrap();
        let ab = letters(2);
        let a = automaton(&[0, 1], &[1, 0], &ab);
        match lift(&a, &c) {
            Err(Error::Precondition(_)) => {}
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn extraction_semantics_for_writer_and_costate() {
        let u = small(1024, &[]);
        let a = automaton(&[0, 1, 1], &[1, 2, 0], &FinSet::canonical(2));

        let writer = writer_symmetry_costrength(&FinSet::canonical(2), &u, &u).unwrap();
        let r = extraction_semantics_report(&a, &writer, 7).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        assert_eq!(r.counts["states"], 6);

        // a genuinely non-writer functor: Costate(2) with the costrength
        // induced by its evaluation copoint
        let s = FinSet::canonical(2);
        let costate = FunctorExpr::comp(
            FunctorExpr::writer(s.clone()),
            FunctorExpr::reader(s.clone()),
        );
        let mut components = Vec::new();
        for x in u.objects() {
            let e = crate::finset::exponential(&s, x);
            let p = product(&s, &e.object);
            components.push(FinFun::from_fn(p.object.clone(), x.clone(), |i| {
                let (is, it) = p.decode(i);
                e.decode(it)[is]
            }));
        }
        let eps = Copoint::from_family(
            NatFamily::new(costate.clone(), FunctorExpr::Id, u.clone(), components).unwrap(),
        )
        .unwrap();
        let c = psi(&eps, &u, &u).unwrap();
        let r = extraction_semantics_report(&a, &c, 5).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        // Costate(2) applied to the 3-state space has 2 * 3^2 elements
        assert_eq!(r.counts["states"], 18);
    }

    #[test]
    fn minimization_is_preserved_by_lifting() {
        let ab = letters(2);
        let u = small(256, &[ab.clone(), FinSet::canonical(4)]);
        // four states alternating a, b; minimizes onto the flip-flop
        let big = automaton(&[0, 1, 0, 1], &[1, 2, 3, 0], &ab);
        let minimized = automaton(&[0, 1], &[1, 0], &ab);
        let h = FinFun::new(
            big.states.clone(),
            minimized.states.clone(),
            vec![0, 1, 0, 1],
        )
        .unwrap();
        let c = writer_symmetry_costrength(&FinSet::canonical(2), &u, &u).unwrap();
        let r = morphism_preservation_report(&big, &minimized, &h, &c, 6).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);

        let identity_h = FinFun::identity(&big.states);
        let r = morphism_preservation_report(&big, &big, &identity_h, &c, 3).unwrap();
        assert!(r.is_pass());

        let bad = FinFun::new(big.states.clone(), minimized.states.clone(), vec![0, 0, 0, 0]).unwrap();
        match morphism_preservation_report(&big, &minimized, &bad, &c, 3) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("state")),
            other => panic!("expected precondition failure, got {other:?}"),
        }
    }

    fn identity_copoint(u: &Universe) -> Copoint {
        let comps: Vec<FinFun> = u.objects().iter().map(FinFun::identity).collect();
        Copoint::from_family(
            NatFamily::new(FunctorExpr::Id, FunctorExpr::Id, u.clone(), comps).unwrap(),
        )
        .unwrap()
    }

    fn pair_copoint(u: &Universe, first: bool) -> Copoint {
        let f = FunctorExpr::prod(FunctorExpr::Id, FunctorExpr::Id);
        let comps: Vec<FinFun> = u
            .objects()
            .iter()
            .map(|x| {
                let p = product(x, x);
                if first {
                    p.proj1()
                } else {
                    p.proj2()
                }
            })
            .collect();
        Copoint::from_family(
            NatFamily::new(f, FunctorExpr::Id, u.clone(), comps).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn degenerate_up_to_is_ordinary_corecursion() {
        let u = Universe::default_small();
        let x = FinSet::canonical(2);
        let m = letters(2);
        let p = product(&m, &x);
        // x0 = a . x1, x1 = b . x0
        let map = FinFun::new(
            x.clone(),
            p.object.clone(),
            vec![p.encode(0, 1), p.encode(1, 0)],
        )
        .unwrap();
        let sys = UpToSystem::new(x, m, FunctorExpr::Id, identity_copoint(&u), map).unwrap();
        let (solution, report) = solve_up_to(&sys).unwrap();
        assert!(report.is_pass(), "{:?}", report.counterexample);
        assert_eq!(
            behavior_lasso(&solution, 0).unwrap(),
            Lasso::new(vec![], vec![0, 1]).unwrap()
        );
    }

    #[test]
    fn up_to_solutions_depend_on_the_copoint() {
        let u = Universe::default_small();
        let x = FinSet::canonical(2);
        let m = letters(2);
        let f = FunctorExpr::prod(FunctorExpr::Id, FunctorExpr::Id);
        let xx = product(&x, &x);
        let p = product(&m, &xx.object);
        // x0 = a . (x0, x1), x1 = b . (x1, x0)
        let map = FinFun::new(
            x.clone(),
            p.object.clone(),
            vec![p.encode(0, xx.encode(0, 1)), p.encode(1, xx.encode(1, 0))],
        )
        .unwrap();

        let first = UpToSystem::new(
            x.clone(),
            m.clone(),
            f.clone(),
            pair_copoint(&u, true),
            map.clone(),
        )
        .unwrap();
        let (sol1, r1) = solve_up_to(&first).unwrap();
        assert!(r1.is_pass(), "{:?}", r1.counterexample);
        // first projection: each variable refers back to itself
        assert_eq!(
            behavior_lasso(&sol1, 0).unwrap(),
            Lasso::new(vec![], vec![0]).unwrap()
        );
        assert_eq!(
            behavior_lasso(&sol1, 1).unwrap(),
            Lasso::new(vec![], vec![1]).unwrap()
        );

        let second = UpToSystem::new(x, m, f, pair_copoint(&u, false), map).unwrap();
        let (sol2, r2) = solve_up_to(&second).unwrap();
        assert!(r2.is_pass(), "{:?}", r2.counterexample);
        // second projection: the variables alternate
        assert_eq!(
            behavior_lasso(&sol2, 0).unwrap(),
            Lasso::new(vec![], vec![0, 1]).unwrap()
        );
        assert_eq!(
            behavior_lasso(&sol2, 1).unwrap(),
            Lasso::new(vec![], vec![1, 0]).unwrap()
        );
    }

    #[test]
    fn up_to_solutions_are_unique_in_behavior() {
        let u = Universe::default_small();
        let x = FinSet::canonical(3);
        let m = letters(2);
        let f = FunctorExpr::prod(FunctorExpr::Id, FunctorExpr::Id);
        let xx = product(&x, &x);
        let p = product(&m, &xx.object);
        // x0 = a . (x1, x2), x1 = b . (x2, x0), x2 = a . (x2, x1)
        let map = FinFun::new(
            x.clone(),
            p.object.clone(),
            vec![
                p.encode(0, xx.encode(1, 2)),
                p.encode(1, xx.encode(2, 0)),
                p.encode(0, xx.encode(2, 1)),
            ],
        )
        .unwrap();
        let sys = UpToSystem::new(x, m, f, pair_copoint(&u, true), map).unwrap();
        let r = up_to_uniqueness_report(&sys).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        assert_eq!(r.counts["candidates"], 8 * 27);
        assert!(r.counts["diagram-solutions"] >= 1);
    }
}
