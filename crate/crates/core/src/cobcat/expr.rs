use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sl2z::MatSL2;

/// A formal arrow between tensor powers of the torus, with its source and
/// target arities cached at every node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArrowExpr {
    node: Arc<Node>,
    source: usize,
    target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Id(usize),
    /// Symmetry `T^m ⊗ T^n -> T^n ⊗ T^m`.
    Tau(usize, usize),
    Cyl(MatSL2),
    Beta,
    Gamma,
    Eta,
    Eps,
    /// `Compose(f, g)` is `f ∘ g`: `g` runs first.
    Compose(ArrowExpr, ArrowExpr),
    Tensor(ArrowExpr, ArrowExpr),
}

impl ArrowExpr {
    fn leaf(node: Node, source: usize, target: usize) -> Self {
        ArrowExpr {
            node: Arc::new(node),
            source,
            target,
        }
    }

    pub fn id(n: usize) -> Self {
        Self::leaf(Node::Id(n), n, n)
    }

    pub fn tau(m: usize, n: usize) -> Self {
        Self::leaf(Node::Tau(m, n), m + n, m + n)
    }

    pub fn cyl(a: MatSL2) -> Self {
        Self::leaf(Node::Cyl(a), 1, 1)
    }

    pub fn beta() -> Self {
        Self::leaf(Node::Beta, 2, 0)
    }

    pub fn gamma() -> Self {
        Self::leaf(Node::Gamma, 0, 2)
    }

    pub fn eta() -> Self {
        Self::leaf(Node::Eta, 0, 1)
    }

    pub fn eps() -> Self {
        Self::leaf(Node::Eps, 1, 0)
    }

    /// `f ∘ g`.
    pub fn compose(f: &ArrowExpr, g: &ArrowExpr) -> Result<Self> {
        if f.source != g.target {
            return Err(Error::Arity(format!(
                "cannot compose {f} (source {}) after {g} (target {})",
                f.source, g.target
            )));
        }
        Ok(ArrowExpr {
            node: Arc::new(Node::Compose(f.clone(), g.clone())),
            source: g.source,
            target: f.target,
        })
    }

    /// Composes a chain listed outermost first: `chain([f, g, h]) = f ∘ g ∘ h`.
    pub fn chain(parts: &[ArrowExpr]) -> Result<Self> {
        let (last, rest) = parts.split_last().expect("non-empty chain");
        rest.iter()
            .rev()
            .try_fold(last.clone(), |acc, f| ArrowExpr::compose(f, &acc))
    }

    pub fn tensor(f: &ArrowExpr, g: &ArrowExpr) -> Self {
        ArrowExpr {
            node: Arc::new(Node::Tensor(f.clone(), g.clone())),
            source: f.source + g.source,
            target: f.target + g.target,
        }
    }

    /// Tensor product of several arrows, left to right.
    pub fn tensor_all(parts: &[ArrowExpr]) -> Self {
        match parts.split_first() {
            None => ArrowExpr::id(0),
            Some((first, rest)) => rest
                .iter()
                .fold(first.clone(), |acc, g| ArrowExpr::tensor(&acc, g)),
        }
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn depth(&self) -> usize {
        match &*self.node {
            Node::Compose(f, g) | Node::Tensor(f, g) => 1 + f.depth().max(g.depth()),
            _ => 1,
        }
    }

    /// Whether `eta` or `eps` occurs.
    pub fn uses_unit(&self) -> bool {
        match &*self.node {
            Node::Eta | Node::Eps => true,
            Node::Compose(f, g) | Node::Tensor(f, g) => f.uses_unit() || g.uses_unit(),
            _ => false,
        }
    }
}

pub fn compose_expr(f: &ArrowExpr, g: &ArrowExpr) -> Result<ArrowExpr> {
    ArrowExpr::compose(f, g)
}

pub fn tensor_expr(f: &ArrowExpr, g: &ArrowExpr) -> ArrowExpr {
    ArrowExpr::tensor(f, g)
}

impl fmt::Display for ArrowExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.node {
            Node::Id(n) => write!(f, "id:{n}"),
            Node::Tau(m, n) => write!(f, "tau:{m},{n}"),
            Node::Cyl(a) => write!(f, "cyl({a})"),
            Node::Beta => write!(f, "beta"),
            Node::Gamma => write!(f, "gamma"),
            Node::Eta => write!(f, "eta"),
            Node::Eps => write!(f, "eps"),
            Node::Compose(a, b) => write!(f, "(comp {a} {b})"),
            Node::Tensor(a, b) => write!(f, "(tens {a} {b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arities() {
        let bg = ArrowExpr::compose(&ArrowExpr::beta(), &ArrowExpr::gamma()).unwrap();
        assert_eq!((bg.source(), bg.target()), (0, 0));
        let b2 = ArrowExpr::compose(&ArrowExpr::beta(), &ArrowExpr::id(2)).unwrap();
        assert_eq!((b2.source(), b2.target()), (2, 0));
        assert!(matches!(
            ArrowExpr::compose(&ArrowExpr::beta(), &ArrowExpr::id(3)),
            Err(Error::Arity(_))
        ));
    }

    #[test]
    fn tensor_arities_add() {
        let t = ArrowExpr::tensor(&ArrowExpr::id(1), &ArrowExpr::id(1));
        assert_eq!((t.source(), t.target()), (2, 2));
        let t = ArrowExpr::tensor(&ArrowExpr::beta(), &ArrowExpr::gamma());
        assert_eq!((t.source(), t.target()), (2, 2));
        let t = ArrowExpr::tensor(&ArrowExpr::cyl(MatSL2::d_a()), &ArrowExpr::eta());
        assert_eq!((t.source(), t.target()), (1, 2));
        assert!(t.uses_unit());
    }

    #[test]
    fn chain_composes_outermost_first() {
        let c = ArrowExpr::chain(&[
            ArrowExpr::beta(),
            ArrowExpr::tensor(&ArrowExpr::cyl(MatSL2::d_a()), &ArrowExpr::id(1)),
            ArrowExpr::gamma(),
        ])
        .unwrap();
        assert_eq!(
            c.to_string(),
            "(comp beta (comp (tens cyl([[1,1],[0,1]]) id:1) gamma))"
        );
    }
}
