use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::expr::{ArrowExpr, Node};
use crate::error::{Error, Result};
use crate::sl2z::{conjugacy_class, MatSL2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    /// `ε ∘ Cyl_A ∘ η`, a lens space.
    C0,
    /// `β ∘ (Cyl_A ⊗ 1)`.
    C1,
    /// `Cyl_A`.
    C2,
    /// `(Cyl_A ⊗ 1) ∘ γ`.
    C3,
    /// `β ∘ (Cyl_A ⊗ 1) ∘ γ`, a torus bundle.
    C4,
    /// `Cyl_A ∘ η`.
    C5,
    /// `ε ∘ Cyl_A`.
    C6,
}

impl FactorKind {
    pub fn arity(self) -> (usize, usize) {
        match self {
            FactorKind::C0 | FactorKind::C4 => (0, 0),
            FactorKind::C1 => (2, 0),
            FactorKind::C2 => (1, 1),
            FactorKind::C3 => (0, 2),
            FactorKind::C5 => (0, 1),
            FactorKind::C6 => (1, 0),
        }
    }

    pub fn is_closed(self) -> bool {
        self.arity() == (0, 0)
    }

    pub fn uses_unit(self) -> bool {
        matches!(self, FactorKind::C0 | FactorKind::C5 | FactorKind::C6)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub kind: FactorKind,
    pub param: MatSL2,
}

impl Factor {
    pub fn new(kind: FactorKind, param: MatSL2) -> Self {
        Factor { kind, param }
    }

    pub fn to_expr(&self) -> ArrowExpr {
        let cyl = ArrowExpr::cyl(self.param.clone());
        let cyl1 = ArrowExpr::tensor(&cyl, &ArrowExpr::id(1));
        let parts = match self.kind {
            FactorKind::C0 => vec![ArrowExpr::eps(), cyl, ArrowExpr::eta()],
            FactorKind::C1 => vec![ArrowExpr::beta(), cyl1],
            FactorKind::C2 => vec![cyl],
            FactorKind::C3 => vec![cyl1, ArrowExpr::gamma()],
            FactorKind::C4 => vec![ArrowExpr::beta(), cyl1, ArrowExpr::gamma()],
            FactorKind::C5 => vec![cyl, ArrowExpr::eta()],
            FactorKind::C6 => vec![ArrowExpr::eps(), cyl],
        };
        ArrowExpr::chain(&parts).expect("factor shapes are well typed")
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.kind, self.param)
    }
}

/// A permutation of `{0, ..., n-1}` stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Arity(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// The τ-term moving leg `i` to position `self[i]`, written with
    /// adjacent transpositions.
    pub fn to_expr(&self) -> ArrowExpr {
        let k = self.0.len();
        let mut cur: Vec<usize> = (0..k).collect();
        let mut expr = ArrowExpr::id(k);
        // bubble sort legs by their destination
        for pass in 0..k {
            for j in 0..k.saturating_sub(1 + pass) {
                if self.0[cur[j]] > self.0[cur[j + 1]] {
                    cur.swap(j, j + 1);
                    let swap = ArrowExpr::tensor_all(&[
                        ArrowExpr::id(j),
                        ArrowExpr::tau(1, 1),
                        ArrowExpr::id(k - j - 2),
                    ]);
                    expr = ArrowExpr::compose(&swap, &expr).expect("widths agree");
                }
            }
        }
        expr
    }
}

/// `τ^t ∘ (C_1 ⊗ ... ⊗ C_m) ∘ τ^s`.
///
/// `source_perm[i]` is the overall source position feeding the `i`-th source
/// port of the factor product, and `target_perm[i]` the overall target
/// position fed by its `i`-th target port.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    target_perm: Perm,
    factors: Vec<Factor>,
    source_perm: Perm,
}

/// A factor together with the overall positions of its ports.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Placed {
    closed: bool,
    sources: Vec<usize>,
    targets: Vec<usize>,
    factor: Factor,
}

impl NormalForm {
    pub fn new(target_perm: Perm, factors: Vec<Factor>, source_perm: Perm) -> Result<Self> {
        let (s, t) = factors.iter().fold((0, 0), |(s, t), f| {
            let (a, b) = f.kind.arity();
            (s + a, t + b)
        });
        if s != source_perm.len() || t != target_perm.len() {
            return Err(Error::Arity(format!(
                "factors have arity {s}->{t} but the permutations have sizes {} and {}",
                source_perm.len(),
                target_perm.len()
            )));
        }
        Ok(NormalForm {
            target_perm,
            factors,
            source_perm,
        })
    }

    /// The empty arrow `1_0`.
    pub fn empty() -> Self {
        NormalForm {
            target_perm: Perm::identity(0),
            factors: Vec::new(),
            source_perm: Perm::identity(0),
        }
    }

    pub fn source(&self) -> usize {
        self.source_perm.len()
    }

    pub fn target(&self) -> usize {
        self.target_perm.len()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn source_perm(&self) -> &Perm {
        &self.source_perm
    }

    pub fn target_perm(&self) -> &Perm {
        &self.target_perm
    }

    pub fn uses_unit(&self) -> bool {
        self.factors.iter().any(|f| f.kind.uses_unit())
    }

    fn placed(&self) -> Vec<Placed> {
        let (mut si, mut ti) = (0, 0);
        self.factors
            .iter()
            .map(|f| {
                let (a, b) = f.kind.arity();
                let p = Placed {
                    closed: f.kind.is_closed(),
                    sources: self.source_perm.0[si..si + a].to_vec(),
                    targets: self.target_perm.0[ti..ti + b].to_vec(),
                    factor: f.clone(),
                };
                si += a;
                ti += b;
                p
            })
            .collect()
    }

    fn from_placed(mut placed: Vec<Placed>) -> Self {
        placed.sort();
        let mut nf = NormalForm::empty();
        for p in placed {
            nf.source_perm.0.extend(p.sources);
            nf.target_perm.0.extend(p.targets);
            nf.factors.push(p.factor);
        }
        nf
    }

    /// Canonical representative: every factor canonical, factors sorted by
    /// the positions they touch, closed factors last.
    pub fn canonical(&self) -> Self {
        let placed = self
            .placed()
            .into_iter()
            .map(|p| {
                let (factor, swap) = canonical_factor_swapped(&p.factor);
                let (mut sources, mut targets) = (p.sources, p.targets);
                if swap {
                    sources.reverse();
                    targets.reverse();
                }
                if factor.param == factor.param.j_flip() {
                    // symmetric parameter: the leg order carries no information
                    sources.sort();
                    targets.sort();
                }
                Placed {
                    closed: p.closed,
                    sources,
                    targets,
                    factor,
                }
            })
            .collect();
        Self::from_placed(placed)
    }

    /// Re-embeds the normal form as an arrow expression.
    pub fn to_expr(&self) -> ArrowExpr {
        // Leg at overall source position source_perm[i] must reach port i.
        let mut to_ports = vec![0; self.source()];
        for (i, &pos) in self.source_perm.0.iter().enumerate() {
            to_ports[pos] = i;
        }
        let pre = Perm(to_ports).to_expr();
        let body =
            ArrowExpr::tensor_all(&self.factors.iter().map(Factor::to_expr).collect::<Vec<_>>());
        let post = self.target_perm.to_expr();
        ArrowExpr::chain(&[post, body, pre]).expect("normal forms are well typed")
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1_0");
        }
        let body: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "tau{:?} . [{}] . tau{:?}",
            self.target_perm.0,
            body.join(" ⊗ "),
            self.source_perm.0
        )
    }
}

/// `r mod |p|` for the second column (C5) or `q mod |p|` for the first
/// column's lower entry (C6), per the sliding moves by `D_a` and `D_b`.
fn reduce_mod(x: &BigInt, p: &BigInt) -> (BigInt, BigInt) {
    // returns (k, x - k|p|) with the remainder in [0, |p|)
    let m = p.abs();
    let (k, rem) = x.div_mod_floor(&m);
    (k, rem)
}

/// Canonical factor and whether its two ports were exchanged.
fn canonical_factor_swapped(x: &Factor) -> (Factor, bool) {
    let a = &x.param;
    let (p, r, q, s) = (a.p(), a.r(), a.q(), a.s());
    let param = match x.kind {
        FactorKind::C2 => a.clone(),
        FactorKind::C1 | FactorKind::C3 => {
            let flipped = a.j_flip();
            return if flipped < *a {
                (Factor::new(x.kind, flipped), true)
            } else {
                (Factor::new(x.kind, a.clone()), false)
            };
        }
        FactorKind::C5 => {
            // A D_a^k = [[p, r + kp], [q, s + kq]]
            if p.is_zero() {
                // q = ±1
                a.mat_mul(&MatSL2::d_a_pow(&-(s * q)))
            } else {
                let (k, _) = reduce_mod(r, p);
                let k = if p.is_negative() { k } else { -k };
                a.mat_mul(&MatSL2::d_a_pow(&k))
            }
        }
        FactorKind::C6 => {
            // D_b^k A = [[p, r], [q - kp, s - kr]]
            if p.is_zero() {
                // r = ±1
                MatSL2::d_b_pow(&(s * r)).mat_mul(a)
            } else {
                let (k, _) = reduce_mod(q, p);
                let k = if p.is_negative() { -k } else { k };
                MatSL2::d_b_pow(&k).mat_mul(a)
            }
        }
        FactorKind::C0 => lens_representative(p, q),
        FactorKind::C4 => {
            let c = conjugacy_class(a).min(conjugacy_class(&a.j_flip()));
            c.rep()
        }
    };
    (Factor::new(x.kind, param), false)
}

/// A fixed matrix with first column `(p, q')`, `q'` the smaller of
/// `q mod |p|` and `q^{-1} mod |p|`.
fn lens_representative(p: &BigInt, q: &BigInt) -> MatSL2 {
    if p.is_zero() {
        // -q r = 1 forces q = ±1
        return MatSL2::unchecked(BigInt::zero(), -q, q.clone(), BigInt::zero());
    }
    let m = p.abs();
    let q0 = q.mod_floor(&m);
    let inv = q0.extended_gcd(&m).x.mod_floor(&m);
    let q1 = if m.is_one() {
        BigInt::zero()
    } else {
        q0.clone().min(inv)
    };
    // p s - q1 r = 1
    let e = p.extended_gcd(&q1);
    debug_assert!(e.gcd.is_one() || (-&e.gcd).is_one());
    // p x + q1 y = g with g = ±1
    let (s, r) = if e.gcd.is_one() {
        (e.x, -e.y)
    } else {
        (-e.x, e.y)
    };
    MatSL2::new(p.clone(), r, q1, s).expect("extended gcd gives determinant 1")
}

pub fn canonical_factor(x: &Factor) -> Factor {
    canonical_factor_swapped(x).0
}

/// Equality of arrows: canonical normal forms coincide.
///
/// Every open factor is pinned by the overall positions of its ports, so
/// after canonicalization the factor matching is forced and the comparison
/// is structural.
pub fn arrows_equal(f: &NormalForm, g: &NormalForm) -> Result<bool> {
    if (f.source(), f.target()) != (g.source(), g.target()) {
        return Err(Error::Arity(format!(
            "cannot compare {}->{} with {}->{}",
            f.source(),
            f.target(),
            g.source(),
            g.target()
        )));
    }
    Ok(f.canonical() == g.canonical())
}

// ---------------------------------------------------------------------------
// Normalization
//
// The expression is sliced into layers `1_m ⊗ gen ⊗ 1_n` applied bottom to
// top. The running state is the set of connected components; an open
// component is a path between two ends (a source slot, a target slot, or a
// cap) carrying the matrix met along the path. Walking up through `Cyl_M`
// multiplies on the left by `M`; walking down multiplies by `J M^{-1} J`.

#[derive(Clone, Debug)]
enum Layer {
    Tau { at: usize, m: usize, n: usize },
    Cyl { at: usize, a: MatSL2 },
    Beta { at: usize },
    Gamma { at: usize },
    Eta { at: usize },
    Eps { at: usize },
}

fn flatten(e: &ArrowExpr, at: usize, out: &mut Vec<Layer>) {
    match e.node() {
        Node::Id(_) => {}
        Node::Tau(m, n) => {
            if *m > 0 && *n > 0 {
                out.push(Layer::Tau { at, m: *m, n: *n })
            }
        }
        Node::Cyl(a) => out.push(Layer::Cyl { at, a: a.clone() }),
        Node::Beta => out.push(Layer::Beta { at }),
        Node::Gamma => out.push(Layer::Gamma { at }),
        Node::Eta => out.push(Layer::Eta { at }),
        Node::Eps => out.push(Layer::Eps { at }),
        Node::Compose(f, g) => {
            flatten(g, at, out);
            flatten(f, at, out);
        }
        Node::Tensor(f, g) => {
            // f ⊗ g = (f ⊗ 1) ∘ (1 ⊗ g)
            flatten(g, at + f.source(), out);
            flatten(f, at, out);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Src(usize),
    Tgt,
    Plug,
}

#[derive(Clone, Debug)]
enum Component {
    /// Matrix read from `ends[0]` to `ends[1]`.
    Open {
        ends: [End; 2],
        w: MatSL2,
    },
    Loop(MatSL2),
}

struct State {
    comps: Vec<Option<Component>>,
    /// Target slot -> (component, end index).
    slots: Vec<(usize, usize)>,
}

impl State {
    fn new(width: usize) -> Self {
        State {
            comps: (0..width)
                .map(|i| {
                    Some(Component::Open {
                        ends: [End::Src(i), End::Tgt],
                        w: MatSL2::identity(),
                    })
                })
                .collect(),
            slots: (0..width).map(|i| (i, 1)).collect(),
        }
    }

    fn open(&mut self, c: usize) -> (&mut [End; 2], &mut MatSL2) {
        match self.comps[c].as_mut() {
            Some(Component::Open { ends, w }) => (ends, w),
            _ => unreachable!("slot refers to a live open component"),
        }
    }

    fn push(&mut self, comp: Component) -> usize {
        self.comps.push(Some(comp));
        self.comps.len() - 1
    }

    fn apply(&mut self, layer: Layer) {
        match layer {
            Layer::Tau { at, m, n } => {
                self.slots[at..at + m + n].rotate_left(m);
            }
            Layer::Cyl { at, a } => {
                let (c, e) = self.slots[at];
                let (_, w) = self.open(c);
                *w = if e == 1 {
                    a.mat_mul(w)
                } else {
                    w.mat_mul(&a.j_flip())
                };
            }
            Layer::Gamma { at } => {
                // read from the right leg to the left leg
                let c = self.push(Component::Open {
                    ends: [End::Tgt, End::Tgt],
                    w: MatSL2::identity(),
                });
                self.slots.splice(at..at, [(c, 1), (c, 0)]);
            }
            Layer::Eta { at } => {
                let c = self.push(Component::Open {
                    ends: [End::Plug, End::Tgt],
                    w: MatSL2::identity(),
                });
                self.slots.insert(at, (c, 1));
            }
            Layer::Eps { at } => {
                let (c, e) = self.slots.remove(at);
                self.open(c).0[e] = End::Plug;
            }
            Layer::Beta { at } => {
                let (c1, e1) = self.slots[at];
                let (c2, e2) = self.slots[at + 1];
                self.slots.drain(at..at + 2);
                if c1 == c2 {
                    let (_, w) = self.open(c1);
                    let w = w.clone();
                    self.comps[c1] = Some(Component::Loop(w));
                    return;
                }
                let Some(Component::Open { ends: ends1, w: w1 }) = self.comps[c1].take() else {
                    unreachable!()
                };
                let Some(Component::Open { ends: ends2, w: w2 }) = self.comps[c2].take() else {
                    unreachable!()
                };
                // first path oriented to end at the joint, second to start there
                let w1 = if e1 == 1 { w1 } else { w1.j_flip() };
                let w2 = if e2 == 0 { w2 } else { w2.j_flip() };
                let c = self.push(Component::Open {
                    ends: [ends1[1 - e1], ends2[1 - e2]],
                    w: w2.mat_mul(&w1),
                });
                for slot in self.slots.iter_mut() {
                    if *slot == (c1, 1 - e1) {
                        *slot = (c, 0);
                    } else if *slot == (c2, 1 - e2) {
                        *slot = (c, 1);
                    }
                }
            }
        }
    }

    fn into_normal_form(self) -> NormalForm {
        let mut tgt_pos: Vec<[usize; 2]> = vec![[usize::MAX; 2]; self.comps.len()];
        for (pos, &(c, e)) in self.slots.iter().enumerate() {
            tgt_pos[c][e] = pos;
        }
        let mut placed = Vec::new();
        for (c, comp) in self.comps.into_iter().enumerate() {
            let Some(comp) = comp else { continue };
            let (kind, w, sources, targets) = match comp {
                Component::Loop(w) => (FactorKind::C4, w, vec![], vec![]),
                Component::Open { ends, w } => {
                    let tp = tgt_pos[c];
                    use End::*;
                    match (ends[0], ends[1]) {
                        (Src(a), Tgt) => (FactorKind::C2, w, vec![a], vec![tp[1]]),
                        (Tgt, Src(a)) => (FactorKind::C2, w.j_flip(), vec![a], vec![tp[0]]),
                        (Src(a), Src(b)) => (FactorKind::C1, w, vec![a, b], vec![]),
                        // C3 reads from its right leg to its left leg
                        (Tgt, Tgt) => (FactorKind::C3, w, vec![], vec![tp[1], tp[0]]),
                        (Plug, Tgt) => (FactorKind::C5, w, vec![], vec![tp[1]]),
                        (Tgt, Plug) => (FactorKind::C5, w.j_flip(), vec![], vec![tp[0]]),
                        (Src(a), Plug) => (FactorKind::C6, w, vec![a], vec![]),
                        (Plug, Src(a)) => (FactorKind::C6, w.j_flip(), vec![a], vec![]),
                        (Plug, Plug) => (FactorKind::C0, w, vec![], vec![]),
                    }
                }
            };
            placed.push(Placed {
                closed: kind.is_closed(),
                sources,
                targets,
                factor: Factor::new(kind, w),
            });
        }
        NormalForm::from_placed(placed).canonical()
    }
}

/// Normal form of an arrow, in canonical shape.
pub fn normalize(e: &ArrowExpr) -> NormalForm {
    let mut layers = Vec::new();
    flatten(e, 0, &mut layers);
    let mut state = State::new(e.source());
    for layer in layers {
        state.apply(layer);
    }
    debug_assert_eq!(state.slots.len(), e.target());
    state.into_normal_form()
}
