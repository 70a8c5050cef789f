//! The equational laws of stateful streams, checked by bounded bisimulation
//! on randomized instances, plus negative controls: one deliberately broken
//! variant per law family, which the checker must refute.
//!
//! Instances are drawn from small state spaces. Every source stream has
//! state `(w, (c, m))`: `w` is a liveness flag that, once cleared, stays
//! cleared and silences the stream; `c` is the producer's counter; `m` is a
//! scratch component. The components play fixed roles so that instances
//! respect the pipeline side-conditions by construction:
//!
//! * guards read only `w` and `c` and are true whenever `w` is, so a guard
//!   can only finish a stream that is effectively ended;
//! * map-filters and nested streams update only `m` (and private state), so
//!   they never change the outcome of a preceding guard;
//! * the step that clears `w` never produces an item.
//!
//! Function tables are pseudo-random but deterministic: each is a seed, and
//! looking up a key hashes the key's structure together with the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::stream::*;
use super::trace::{equiv_check, strong_check_with_states, Counterexample, EquivVerdict, Mode};
use super::value::Val;

/// Version of the law-suite report format.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// A pseudo-random function table.
#[derive(Clone, Copy, Debug)]
pub struct Table(u64);

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl Table {
    fn pick(&self, key: &Val, salt: u64, n: u64) -> u64 {
        splitmix(self.0 ^ splitmix(key.fingerprint() ^ salt.wrapping_mul(0x2545_f491_4f6c_dd1d))) % n
    }

    /// A value in `[-4, 4]`.
    fn small(&self, key: &Val, salt: u64) -> i64 {
        self.pick(key, salt, 9) as i64 - 4
    }

    /// True with probability `num / den`.
    fn chance(&self, key: &Val, salt: u64, num: u64, den: u64) -> bool {
        self.pick(key, salt, den) < num
    }
}

/// Random components for law instances.
pub struct Gen {
    rng: ChaCha8Rng,
}

fn src_state(w: bool, c: i64, m: i64) -> Val {
    Val::pair(Val::Bool(w), Val::pair(Val::Int(c), Val::Int(m)))
}

fn w_of(z: &Val) -> bool {
    z.fst().bool()
}

fn c_of(z: &Val) -> i64 {
    z.snd().fst().int()
}

fn m_of(z: &Val) -> i64 {
    z.snd().snd().int()
}

fn with_m(z: &Val, m: i64) -> Val {
    src_state(w_of(z), c_of(z), m)
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn table(&mut self) -> Table {
        Table(self.rng.gen())
    }

    fn small(&mut self) -> i64 {
        self.rng.gen_range(-4..=4)
    }

    fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// An initial source state with the flag set.
    pub fn src_z0(&mut self) -> Val {
        src_state(true, self.small(), self.small())
    }

    /// A step function over source states. A linear one never skips while
    /// the flag is set; a non-linear one skips now and then.
    pub fn unrolling(&mut self, linear: bool) -> Unrolling {
        let t = self.table();
        unrolling(move |z| {
            if !w_of(z) {
                return (None, z.clone());
            }
            let key = z.snd().clone();
            if t.chance(&key, 1, 1, 8) {
                return (None, src_state(false, c_of(z), m_of(z)));
            }
            let item = (linear || t.chance(&key, 3, 3, 4)).then(|| Val::Int(t.small(&key, 4)));
            (item, src_state(true, t.small(&key, 2), m_of(z)))
        })
    }

    /// A guard over source states: true whenever the flag is set, otherwise
    /// an arbitrary function of the counter.
    pub fn guard(&mut self) -> Pred {
        let t = self.table();
        pred(move |z| w_of(z) || t.chance(&Val::Int(c_of(z)), 5, 1, 2))
    }

    /// A guarded or unguarded source stream.
    pub fn source(&mut self, linear: bool) -> OStream {
        let s = o_unroll(self.unrolling(linear), self.src_z0());
        if self.coin() {
            o_guard(self.guard(), s)
        } else {
            s
        }
    }

    /// A map-filter over source states that reads the counter and `m` but
    /// updates only `m`.
    pub fn map_filter(&mut self) -> MapFilterFn {
        let t = self.table();
        map_filter_fn(move |z, a| {
            let key = Val::pair(a.clone(), z.snd().clone());
            let out = t.chance(&key, 6, 2, 3).then(|| Val::Int(t.small(&key, 7)));
            (out, with_m(z, t.small(&key, 8)))
        })
    }

    /// A nested-stream builder over source states: a guarded unrolling
    /// with a private `(flag, counter)` state that updates only `m` of the
    /// shared state.
    pub fn inner(&mut self) -> FlatMapFn {
        let t = self.table();
        flat_map_fn(move |z, x| {
            let seed = Val::pair(x.clone(), Val::Int(m_of(z)));
            let zp0 = Val::pair(Val::Bool(true), Val::Int(t.small(&seed, 9)));
            let x = x.clone();
            let u = unrolling(move |zz| {
                let (zp, z) = (zz.fst(), zz.snd());
                if !zp.fst().bool() {
                    return (None, zz.clone());
                }
                let key = Val::pair(x.clone(), Val::pair(zp.snd().clone(), Val::Int(m_of(z))));
                if t.chance(&key, 10, 1, 3) {
                    let zp1 = Val::pair(Val::Bool(false), zp.snd().clone());
                    return (None, Val::pair(zp1, z.clone()));
                }
                let item = t.chance(&key, 11, 3, 4).then(|| Val::Int(t.small(&key, 12)));
                let zp1 = Val::pair(Val::Bool(true), Val::Int(t.small(&key, 13)));
                (item, Val::pair(zp1, with_m(z, t.small(&key, 14))))
            });
            let g = pred(|zz| zz.fst().fst().bool());
            o_abstract(o_guard(g, o_unroll(u, Val::pair(zp0, z.clone()))))
        })
    }

    /// A source with one extra, evolving state component in front:
    /// `init h ▹ map_filter (updates h) `.
    pub fn stateful(&mut self) -> OStream {
        let h0 = Val::Int(self.small());
        let t = self.table();
        let mf = map_filter_fn(move |zz, a| {
            let key = Val::pair(a.clone(), zz.fst().clone());
            let out = Val::Int(a.int().wrapping_add(zz.fst().int()));
            (Some(out), Val::pair(Val::Int(t.small(&key, 15)), zz.snd().clone()))
        });
        let src = self.source(false);
        o_map_filter(mf, o_init(h0, src))
    }

    /// A small state value to `init` with.
    pub fn init_value(&mut self) -> Val {
        Val::Int(self.small())
    }
}

/// `(Id × f)`: lifts a map-filter to a state with an extra left component.
fn lift_mf(f: MapFilterFn) -> MapFilterFn {
    map_filter_fn(move |zz, a| {
        let (b, z1) = f(zz.snd(), a);
        (b, Val::pair(zz.fst().clone(), z1))
    })
}

/// `π' ▹ g`.
fn lift_pred(g: Pred) -> Pred {
    pred(move |zz| g(zz.snd()))
}

/// `λ((z, z1), a). f (z1, a) ▹ init z`.
fn lift_inner(f: FlatMapFn) -> FlatMapFn {
    flat_map_fn(move |zz, a| o_init(zz.fst().clone(), f(zz.snd(), a)))
}

fn assoc() -> StateMap {
    state_map(|v| Val::pair(v.fst().fst().clone(), Val::pair(v.fst().snd().clone(), v.snd().clone())))
}

fn unassoc() -> StateMap {
    state_map(|v| Val::pair(Val::pair(v.fst().clone(), v.snd().fst().clone()), v.snd().snd().clone()))
}

fn identity() -> StateMap {
    state_map(|v| v.clone())
}

/// The two sides of a law instance, and how their states correspond (for
/// strong laws).
pub struct Instance {
    pub lhs: OStream,
    pub rhs: OStream,
    pub iso: Option<StateMap>,
}

fn same_states(lhs: OStream, rhs: OStream) -> Instance {
    Instance {
        lhs,
        rhs,
        iso: Some(identity()),
    }
}

fn items_only(lhs: OStream, rhs: OStream) -> Instance {
    Instance {
        lhs,
        rhs,
        iso: None,
    }
}

/// Families of laws, each with one negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Init,
    Abstract,
    UnrollMap,
    Guard,
    FlatMap,
    Zip,
}

/// One law: its number and name, its family, the equivalence it asserts,
/// and an instance generator.
pub struct Law {
    pub id: u32,
    pub name: &'static str,
    pub family: Family,
    pub mode: Mode,
    pub build: fn(&mut Gen) -> Instance,
}

fn unroll_init(g: &mut Gen) -> Instance {
    let (u, z1, z) = (g.unrolling(false), g.src_z0(), g.init_value());
    let u2 = u.clone();
    let id_u = unrolling(move |zz| {
        let (a, z1) = u2(zz.snd());
        (a, Val::pair(zz.fst().clone(), z1))
    });
    same_states(
        o_init(z.clone(), o_unroll(u, z1.clone())),
        o_unroll(id_u, Val::pair(z, z1)),
    )
}

fn guard_init(g: &mut Gen) -> Instance {
    let (p, z) = (g.guard(), g.init_value());
    let s = g.source(false);
    same_states(
        o_init(z.clone(), o_guard(p.clone(), s.clone())),
        o_guard(lift_pred(p), o_init(z, s)),
    )
}

fn map_init(g: &mut Gen) -> Instance {
    let (f, z) = (g.map_filter(), g.init_value());
    let s = g.source(false);
    same_states(
        o_init(z.clone(), o_map_filter(f.clone(), s.clone())),
        o_map_filter(lift_mf(f), o_init(z, s)),
    )
}

fn flatmap_init(g: &mut Gen) -> Instance {
    let (f, z) = (g.inner(), g.init_value());
    let s = g.source(false);
    same_states(
        o_init(z.clone(), o_flat_map(f.clone(), s.clone())),
        o_flat_map(lift_inner(f), o_init(z, s)),
    )
}

fn zip_init(g: &mut Gen) -> Instance {
    let z = g.init_value();
    let (s1, s2) = (g.source(false), g.source(false));
    Instance {
        lhs: o_zip(o_init(z.clone(), s1.clone()), s2.clone()),
        rhs: o_init(z, o_zip(s1, s2)),
        iso: Some(assoc()),
    }
}

fn zip_abstract(g: &mut Gen) -> Instance {
    let (s1, s2) = (g.stateful(), g.source(false));
    same_states(
        o_zip(o_abstract(s1.clone()), s2.clone()),
        o_abstract(o_adjust(assoc(), unassoc(), o_zip(s1, s2))),
    )
}

fn init_abstract(g: &mut Gen) -> Instance {
    let z = g.init_value();
    let s = g.source(false);
    same_states(o_abstract(o_init(z, s.clone())), s)
}

/// `(z', (z, z1)) ↔ (z, (z', z1))`.
fn exchange() -> StateMap {
    state_map(|v| {
        Val::pair(
            v.snd().fst().clone(),
            Val::pair(v.fst().clone(), v.snd().snd().clone()),
        )
    })
}

fn abstract_init(g: &mut Gen) -> Instance {
    let z = g.init_value();
    let s = g.stateful();
    same_states(
        o_init(z.clone(), o_abstract(s.clone())),
        o_abstract(o_adjust(exchange(), exchange(), o_init(z, s))),
    )
}

fn abstract_guard(g: &mut Gen) -> Instance {
    let p = g.guard();
    let s = g.stateful();
    same_states(
        o_guard(p.clone(), o_abstract(s.clone())),
        o_abstract(o_guard(lift_pred(p), s)),
    )
}

fn abstract_map(g: &mut Gen) -> Instance {
    let f = g.map_filter();
    let s = g.stateful();
    same_states(
        o_map_filter(f.clone(), o_abstract(s.clone())),
        o_abstract(o_map_filter(lift_mf(f), s)),
    )
}

fn abstract_flatmap(g: &mut Gen) -> Instance {
    let f = g.inner();
    let s = g.stateful();
    same_states(
        o_flat_map(f.clone(), o_abstract(s.clone())),
        o_abstract(o_flat_map(lift_inner(f), s)),
    )
}

/// `g ▹ [⟨1, Id⟩, f]`: the unrolling followed by the map-filter on the
/// state the unrolling produced.
fn fuse_unroll_map(u: Unrolling, f: MapFilterFn) -> Unrolling {
    unrolling(move |z| match u(z) {
        (None, z1) => (None, z1),
        (Some(a), z1) => f(&z1, &a),
    })
}

fn unroll_map(g: &mut Gen) -> Instance {
    let (u, f, z) = (g.unrolling(false), g.map_filter(), g.src_z0());
    same_states(
        o_map_filter(f.clone(), o_unroll(u.clone(), z.clone())),
        o_unroll(fuse_unroll_map(u, f), z),
    )
}

fn guard_guard(g: &mut Gen) -> Instance {
    let (f1, f2) = (g.guard(), g.guard());
    let s = g.source(false);
    let both = {
        let (f1, f2) = (f1.clone(), f2.clone());
        pred(move |z| f1(z) && f2(z))
    };
    same_states(o_guard(f2, o_guard(f1, s.clone())), o_guard(both, s))
}

fn guard_map(g: &mut Gen) -> Instance {
    let (p, f) = (g.guard(), g.map_filter());
    let s = g.source(false);
    same_states(
        o_map_filter(f.clone(), o_guard(p.clone(), s.clone())),
        o_guard(p, o_map_filter(f, s)),
    )
}

fn guard_flatmap(g: &mut Gen) -> Instance {
    let (p, f) = (g.guard(), g.inner());
    let s = g.source(false);
    same_states(
        o_flat_map(f.clone(), o_guard(p.clone(), s.clone())),
        o_guard(p, o_flat_map(f, s)),
    )
}

fn flatmap_map(g: &mut Gen) -> Instance {
    let (f1, f2) = (g.inner(), g.map_filter());
    let s = g.source(false);
    let (f1c, f2c) = (f1.clone(), f2.clone());
    same_states(
        o_map_filter(f2, o_flat_map(f1, s.clone())),
        o_flat_map(flat_map_fn(move |z, a| o_map_filter(f2c.clone(), f1c(z, a))), s),
    )
}

fn flatmap_flatmap(g: &mut Gen) -> Instance {
    let (f1, f2) = (g.inner(), g.inner());
    let s = g.source(false);
    let (f1c, f2c) = (f1.clone(), f2.clone());
    same_states(
        o_flat_map(f2, o_flat_map(f1, s.clone())),
        o_flat_map(flat_map_fn(move |z, a| o_flat_map(f2c.clone(), f1c(z, a))), s),
    )
}

fn zip_guard(g: &mut Gen) -> Instance {
    let p = g.guard();
    let (s1, s2) = (g.source(false), g.source(false));
    let on_left = {
        let p = p.clone();
        pred(move |zz| p(zz.fst()))
    };
    same_states(
        o_zip(o_guard(p, s1.clone()), s2.clone()),
        o_guard(on_left, o_zip(s1, s2)),
    )
}

/// `(u1 × u2) ▹ (pair† × Id)`.
fn pair_unrollings(u1: Unrolling, u2: Unrolling) -> Unrolling {
    unrolling(move |zz| {
        let (a1, z1) = u1(zz.fst());
        let (a2, z2) = u2(zz.snd());
        let item = match (a1, a2) {
            (Some(a1), Some(a2)) => Some(Val::pair(a1, a2)),
            _ => None,
        };
        (item, Val::pair(z1, z2))
    })
}

fn zip_bothlinear(g: &mut Gen) -> Instance {
    let (u1, u2, z1, z2) = (g.unrolling(true), g.unrolling(true), g.src_z0(), g.src_z0());
    items_only(
        o_zip(o_unroll(u1.clone(), z1.clone()), o_unroll(u2.clone(), z2.clone())),
        o_unroll(pair_unrollings(u1, u2), Val::pair(z1, z2)),
    )
}

/// `f u1 = λ((z1, z2), y). (u1 z1) ▹ ((λx. (x, y))† × λz1. (z1, z2))`.
fn zip_linear_mf(u1: Unrolling) -> MapFilterFn {
    map_filter_fn(move |zz, y| {
        let (x, z1) = u1(zz.fst());
        (x.map(|x| Val::pair(x, y.clone())), Val::pair(z1, zz.snd().clone()))
    })
}

fn zip_linear_with(g: &mut Gen, linear: bool) -> Instance {
    let (u1, z1) = (g.unrolling(linear), g.src_z0());
    let s2 = g.source(false);
    items_only(
        o_zip(o_unroll(u1.clone(), z1.clone()), s2.clone()),
        o_map_filter(zip_linear_mf(u1), o_init(z1, s2)),
    )
}

fn zip_linear(g: &mut Gen) -> Instance {
    zip_linear_with(g, true)
}

/// All laws, numbered in presentation order.
pub fn laws() -> Vec<Law> {
    use Family::*;
    use Mode::*;
    let law = |id, name, family, mode, build| Law {
        id,
        name,
        family,
        mode,
        build,
    };
    vec![
        law(1, "unroll-init", Init, Strong, unroll_init as fn(&mut Gen) -> Instance),
        law(2, "guard-init", Init, Strong, guard_init),
        law(3, "map-init", Init, Strong, map_init),
        law(4, "flatmap-init", Init, Strong, flatmap_init),
        law(5, "zip-init", Init, Strong, zip_init),
        law(6, "zip-abstract", Abstract, Strong, zip_abstract),
        law(7, "init-abstract", Abstract, Strong, init_abstract),
        law(8, "abstract-init", Abstract, Strong, abstract_init),
        law(9, "abstract-guard", Abstract, Strong, abstract_guard),
        law(10, "abstract-map", Abstract, Strong, abstract_map),
        law(11, "abstract-flatmap", Abstract, Strong, abstract_flatmap),
        law(12, "unroll-map", UnrollMap, Strong, unroll_map),
        law(13, "guard-guard", Guard, Strong, guard_guard),
        law(14, "guard-map", Guard, Strong, guard_map),
        law(15, "guard-flatmap", Guard, Strong, guard_flatmap),
        law(16, "flatmap-map", FlatMap, Strong, flatmap_map),
        law(17, "flatmap-flatmap", FlatMap, Strong, flatmap_flatmap),
        law(18, "zip-guard", Guard, Strong, zip_guard),
        law(19, "zip-bothlinear", Zip, Weak, zip_bothlinear),
        law(20, "zip-linear", Zip, Weak, zip_linear),
    ]
}

/// A deliberately broken variant of one law of a family.
pub struct Control {
    pub family: Family,
    pub law: u32,
    pub description: &'static str,
    pub mode: Mode,
    pub build: fn(&mut Gen) -> Instance,
}

/// `(Id × f)` that forgets the state update of `f`.
fn lift_mf_stateless(f: MapFilterFn) -> MapFilterFn {
    map_filter_fn(move |zz, a| (f(zz.snd(), a).0, zz.clone()))
}

fn broken_map_init(g: &mut Gen) -> Instance {
    let (f, z) = (g.map_filter(), g.init_value());
    let s = g.source(false);
    same_states(
        o_init(z.clone(), o_map_filter(f.clone(), s.clone())),
        o_map_filter(lift_mf_stateless(f), o_init(z, s)),
    )
}

fn broken_abstract_map(g: &mut Gen) -> Instance {
    let f = g.map_filter();
    let s = g.stateful();
    same_states(
        o_map_filter(f.clone(), o_abstract(s.clone())),
        o_abstract(o_map_filter(lift_mf_stateless(f), s)),
    )
}

fn broken_unroll_map(g: &mut Gen) -> Instance {
    let (u, f, z) = (g.unrolling(false), g.map_filter(), g.src_z0());
    let (u2, f2) = (u.clone(), f.clone());
    // Maps with the state from before the step instead of after it.
    let pre_state = unrolling(move |z| match u2(z) {
        (None, z1) => (None, z1),
        (Some(a), z1) => {
            let (b, zf) = f2(z, &a);
            (b, with_m(&z1, m_of(&zf)))
        }
    });
    same_states(o_map_filter(f, o_unroll(u, z.clone())), o_unroll(pre_state, z))
}

fn broken_guard_guard(g: &mut Gen) -> Instance {
    let (f1, f2) = (g.guard(), g.guard());
    let s = g.source(false);
    let either = {
        let (f1, f2) = (f1.clone(), f2.clone());
        pred(move |z| f1(z) || f2(z))
    };
    same_states(o_guard(f2, o_guard(f1, s.clone())), o_guard(either, s))
}

fn broken_flatmap_flatmap(g: &mut Gen) -> Instance {
    let (f1, f2) = (g.inner(), g.inner());
    let s = g.source(false);
    let (f1c, f2c) = (f1.clone(), f2.clone());
    // Nests the two builders the wrong way round.
    same_states(
        o_flat_map(f2, o_flat_map(f1, s.clone())),
        o_flat_map(flat_map_fn(move |z, a| o_flat_map(f1c.clone(), f2c(z, a))), s),
    )
}

fn broken_zip_linear(g: &mut Gen) -> Instance {
    zip_linear_with(g, false)
}

/// The negative controls, one per family.
pub fn controls() -> Vec<Control> {
    vec![
        Control {
            family: Family::Init,
            law: 3,
            description: "map-filter lifted past init forgets its state update",
            mode: Mode::Strong,
            build: broken_map_init,
        },
        Control {
            family: Family::Abstract,
            law: 10,
            description: "map-filter lifted past abstract forgets its state update",
            mode: Mode::Strong,
            build: broken_abstract_map,
        },
        Control {
            family: Family::UnrollMap,
            law: 12,
            description: "fused map-filter sees the state from before the step",
            mode: Mode::Strong,
            build: broken_unroll_map,
        },
        Control {
            family: Family::Guard,
            law: 13,
            description: "two guards merged with disjunction",
            mode: Mode::Strong,
            build: broken_guard_guard,
        },
        Control {
            family: Family::FlatMap,
            law: 17,
            description: "nested builders composed in reverse order",
            mode: Mode::Strong,
            build: broken_flatmap_flatmap,
        },
        Control {
            family: Family::Zip,
            law: 20,
            description: "zip elimination applied to a non-linear unrolling",
            mode: Mode::Weak,
            build: broken_zip_linear,
        },
    ]
}

/// Checks one instance.
pub fn check_instance(inst: &Instance, mode: Mode, fuel: usize) -> EquivVerdict {
    match (mode, &inst.iso) {
        (Mode::Strong, Some(iso)) => strong_check_with_states(&inst.lhs, &inst.rhs, iso.clone(), fuel),
        _ => equiv_check(&inst.lhs, &inst.rhs, mode, fuel),
    }
}

/// Parameters of a law-suite run.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteConfig {
    pub fuel: usize,
    pub instances: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            fuel: 50,
            instances: 100,
            seed: 0,
        }
    }
}

/// The seed of instance `i` of law (or control) `id`.
fn instance_seed(seed: u64, salt: u64, id: u32, i: usize) -> u64 {
    splitmix(seed ^ splitmix(salt ^ ((id as u64) << 32) ^ i as u64))
}

/// A refuting instance, for reports.
#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub instance: usize,
    pub seed: u64,
    pub index: usize,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

impl CounterexampleReport {
    fn new(instance: usize, seed: u64, c: &Counterexample) -> Self {
        CounterexampleReport {
            instance,
            seed,
            index: c.index,
            lhs: c.lhs.render(),
            rhs: c.rhs.render(),
        }
    }
}

/// The outcome of checking one law.
#[derive(Clone, Debug, Serialize)]
pub struct LawResult {
    pub id: u32,
    pub name: &'static str,
    pub family: Family,
    pub mode: Mode,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    /// Instances whose traces ended before the fuel ran out on both sides.
    pub finished: usize,
    pub first_counterexample: Option<CounterexampleReport>,
}

impl LawResult {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.passed == self.instances
    }
}

/// The outcome of one negative control.
#[derive(Clone, Debug, Serialize)]
pub struct ControlResult {
    pub family: Family,
    pub law: u32,
    pub description: &'static str,
    pub detected: bool,
    /// Instances needed until the first refutation.
    pub instances_tried: usize,
    pub counterexample: Option<CounterexampleReport>,
}

/// The outcome of a full law-suite run.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub config: SuiteConfig,
    pub laws: Vec<LawResult>,
    pub controls: Vec<ControlResult>,
    pub warnings: Vec<String>,
}

impl SuiteReport {
    /// Every law holds on every instance and every control is refuted.
    pub fn ok(&self) -> bool {
        self.laws.iter().all(LawResult::ok) && self.controls.iter().all(|c| c.detected)
    }

    /// A human-readable summary, one line per law and control.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for l in &self.laws {
            out.push_str(&format!(
                "law {:>2} {:<17} {:<6} {}/{} passed{}\n",
                l.id,
                l.name,
                format!("{:?}", l.mode).to_lowercase(),
                l.passed,
                l.instances,
                if l.ok() { "" } else { "  FAILED" }
            ));
            if let Some(c) = &l.first_counterexample {
                out.push_str(&format!(
                    "    counterexample (instance {}, seed {}), diverging at event {}\n      lhs {}\n      rhs {}\n",
                    c.instance,
                    c.seed,
                    c.index,
                    c.lhs.join("; "),
                    c.rhs.join("; ")
                ));
            }
        }
        for c in &self.controls {
            out.push_str(&format!(
                "control {:?} (law {}): {} — {}\n",
                c.family,
                c.law,
                if c.detected { "refuted" } else { "NOT REFUTED" },
                c.description
            ));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

/// Checks one law on `cfg.instances` random instances.
pub fn check_law(law: &Law, cfg: &SuiteConfig) -> LawResult {
    let mut res = LawResult {
        id: law.id,
        name: law.name,
        family: law.family,
        mode: law.mode,
        instances: cfg.instances,
        passed: 0,
        failed: 0,
        finished: 0,
        first_counterexample: None,
    };
    for i in 0..cfg.instances {
        let seed = instance_seed(cfg.seed, 0x1a5, law.id, i);
        let inst = (law.build)(&mut Gen::new(seed));
        let v = check_instance(&inst, law.mode, cfg.fuel);
        if v.holds {
            res.passed += 1;
            let t = super::trace::trace(&inst.lhs, cfg.fuel);
            if t.ended() {
                res.finished += 1;
            }
        } else {
            res.failed += 1;
            if res.first_counterexample.is_none() {
                let c = v.counterexample.as_ref().expect("a failed check has a counterexample");
                res.first_counterexample = Some(CounterexampleReport::new(i, seed, c));
            }
        }
    }
    res
}

/// Runs a negative control until the first refutation (at most
/// `cfg.instances` instances).
pub fn check_control(control: &Control, cfg: &SuiteConfig) -> ControlResult {
    for i in 0..cfg.instances {
        let seed = instance_seed(cfg.seed, 0xbad, control.law, i);
        let inst = (control.build)(&mut Gen::new(seed));
        let v = check_instance(&inst, control.mode, cfg.fuel);
        if !v.holds {
            let c = v.counterexample.as_ref().expect("a failed check has a counterexample");
            return ControlResult {
                family: control.family,
                law: control.law,
                description: control.description,
                detected: true,
                instances_tried: i + 1,
                counterexample: Some(CounterexampleReport::new(i, seed, c)),
            };
        }
    }
    ControlResult {
        family: control.family,
        law: control.law,
        description: control.description,
        detected: false,
        instances_tried: cfg.instances,
        counterexample: None,
    }
}

/// Runs every law and every negative control.
pub fn run_suite(cfg: SuiteConfig) -> SuiteReport {
    let mut warnings = vec![];
    if cfg.fuel == 0 {
        warnings.push("fuel is 0: every check passes vacuously".to_string());
    }
    if cfg.instances == 0 {
        warnings.push("0 instances requested: nothing was checked".to_string());
    }
    let laws: Vec<LawResult> = laws().iter().map(|l| check_law(l, &cfg)).collect();
    let controls = controls().iter().map(|c| check_control(c, &cfg)).collect();
    SuiteReport {
        schema_version: REPORT_SCHEMA_VERSION,
        config: cfg,
        laws,
        controls,
        warnings,
    }
}

/// Shared so that report consumers can name a law by number.
pub fn law_name(id: u32) -> Option<&'static str> {
    laws().into_iter().find(|l| l.id == id).map(|l| l.name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_and_controls_are_refuted() {
        let report = run_suite(SuiteConfig {
            fuel: 50,
            instances: 100,
            seed: 7,
        });
        assert!(report.ok(), "{}", report.summary());
    }
}
