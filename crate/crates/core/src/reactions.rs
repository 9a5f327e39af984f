//! Reaction systems and their one-step result functions.

use std::fmt;

use crate::classes::{first_violation, Law, PointMap, Witness};
use crate::function::check_width;
use crate::{Error, Result, RsFunction, SubsetCode};

/// A reaction `(R, I, P)`: enabled on `X` when `R ⊆ X` and `I ∩ X = ∅`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Reaction {
    reactants: SubsetCode,
    inhibitors: SubsetCode,
    products: SubsetCode,
}

impl Reaction {
    pub fn new(
        reactants: SubsetCode,
        inhibitors: SubsetCode,
        products: SubsetCode,
    ) -> Result<Self> {
        if !reactants.is_disjoint(inhibitors) {
            return Err(Error::InvalidReaction(format!(
                "reactants {reactants} and inhibitors {inhibitors} overlap"
            )));
        }
        if products.is_empty() {
            return Err(Error::InvalidReaction("empty product set".into()));
        }
        Ok(Reaction {
            reactants,
            inhibitors,
            products,
        })
    }

    pub fn reactants(&self) -> SubsetCode {
        self.reactants
    }

    pub fn inhibitors(&self) -> SubsetCode {
        self.inhibitors
    }

    pub fn products(&self) -> SubsetCode {
        self.products
    }

    #[inline]
    pub fn is_enabled(&self, x: SubsetCode) -> bool {
        self.reactants.is_subset_of(x) && self.inhibitors.is_disjoint(x)
    }
}

impl fmt::Display for Reaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.reactants, self.inhibitors, self.products
        )
    }
}

/// A finite set of reactions over a background set of width `n`, kept
/// sorted and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReactionSystem {
    n: u8,
    reactions: Vec<Reaction>,
}

impl ReactionSystem {
    pub fn new(n: u8, reactions: impl IntoIterator<Item = Reaction>) -> Result<Self> {
        check_width(n)?;
        let full = SubsetCode::full(n);
        let mut reactions: Vec<Reaction> = reactions.into_iter().collect();
        for r in &reactions {
            if !(r.reactants.is_subset_of(full)
                && r.inhibitors.is_subset_of(full)
                && r.products.is_subset_of(full))
            {
                return Err(Error::InvalidReaction(format!(
                    "{r} does not fit width {n}"
                )));
            }
        }
        reactions.sort_unstable();
        reactions.dedup();
        Ok(ReactionSystem { n, reactions })
    }

    pub fn empty(n: u8) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn len(&self) -> usize {
        self.reactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reactions.is_empty()
    }

    /// Union of the products of every reaction enabled on `x`.
    pub fn res_eval(&self, x: SubsetCode) -> SubsetCode {
        self.reactions
            .iter()
            .filter(|r| r.is_enabled(x))
            .fold(SubsetCode::EMPTY, |acc, r| acc.union(r.products))
    }

    pub fn res_function(&self) -> RsFunction {
        RsFunction::from_fn(self.n, |x| self.res_eval(x)).expect("system width is valid")
    }

    /// At most one reactant and at most one inhibitor per reaction.
    pub fn is_minimal(&self) -> bool {
        self.reactions
            .iter()
            .all(|r| r.reactants.len() <= 1 && r.inhibitors.len() <= 1)
    }

    /// Every reaction has nonempty reactants and nonempty inhibitors.
    pub fn is_nondegenerate(&self) -> bool {
        self.reactions
            .iter()
            .all(|r| !r.reactants.is_empty() && !r.inhibitors.is_empty())
    }

    /// `(I, R, P)` for every `(R, I, P)`; specifies the complement dual.
    pub fn transform_complement(&self) -> ReactionSystem {
        self.map(|r| Reaction {
            reactants: r.inhibitors,
            inhibitors: r.reactants,
            products: r.products,
        })
    }

    /// `(R, I, σ[P])` for every `(R, I, P)`.
    pub fn transform_post_sigma(&self, sigma: &PointMap) -> Result<ReactionSystem> {
        self.check_map(sigma)?;
        // σ[P] is nonempty whenever P is, so no reaction is dropped.
        Ok(self.map(|r| Reaction {
            products: sigma.image(r.products),
            ..r
        }))
    }

    /// `(σ⁻¹[R], σ⁻¹[I], P)` for every `(R, I, P)`.
    ///
    /// Preimages of disjoint sets are disjoint, so every `σ` is accepted, but
    /// the result stays minimal only when `σ` is injective.
    pub fn transform_pre_sigma(&self, sigma: &PointMap) -> Result<ReactionSystem> {
        self.check_map(sigma)?;
        let reactions = self
            .reactions
            .iter()
            .map(|r| {
                Reaction::new(
                    sigma.preimage(r.reactants),
                    sigma.preimage(r.inhibitors),
                    r.products,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        ReactionSystem::new(self.n, reactions)
    }

    fn check_map(&self, sigma: &PointMap) -> Result<()> {
        if sigma.n() != self.n {
            return Err(Error::WidthMismatch {
                left: self.n,
                right: sigma.n(),
            });
        }
        Ok(())
    }

    fn map(&self, f: impl Fn(Reaction) -> Reaction) -> ReactionSystem {
        let mut reactions: Vec<Reaction> = self.reactions.iter().copied().map(f).collect();
        reactions.sort_unstable();
        reactions.dedup();
        ReactionSystem {
            n: self.n,
            reactions,
        }
    }
}

impl fmt::Display for ReactionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, r) in self.reactions.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("}")
    }
}

/// The canonical system with one reaction `(X, S \ X, f(X))` per `X` whose
/// image is nonempty.
pub fn maximally_inhibited(f: &RsFunction) -> ReactionSystem {
    let n = f.n();
    let reactions = (0..f.len() as u8)
        .filter(|&x| f.get(x) != 0)
        .map(|x| Reaction {
            reactants: SubsetCode(x),
            inhibitors: SubsetCode(x).complement(n),
            products: SubsetCode(f.get(x)),
        });
    ReactionSystem::new(n, reactions).expect("function width is valid")
}

/// `f` is outside `M(S)`; holds the first violating pair of each failed law.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("not specifiable by a minimal reaction system: {}", describe(self))]
pub struct NotInM {
    pub union: Option<Witness>,
    pub intersection: Option<Witness>,
}

fn describe(e: &NotInM) -> String {
    e.union
        .iter()
        .chain(e.intersection.iter())
        .map(Witness::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Builds a minimal reaction system specifying `f`, or reports the first
/// violation of each subadditivity law that fails.
///
/// Every candidate shape `(R, I)` with `|R|, |I| <= 1` and `R ∩ I = ∅` gets
/// the largest product compatible with `f`: the intersection of `f(X)` over
/// all `X` enabling it. The candidate system is then checked by full
/// evaluation.
pub fn synthesize_minimal(f: &RsFunction) -> Result<ReactionSystem, NotInM> {
    let n = f.n();
    let full = f.full();
    let shapes = std::iter::once(SubsetCode::EMPTY).chain((0..n).map(SubsetCode::singleton));
    let mut reactions = Vec::new();
    for reactants in shapes.clone() {
        for inhibitors in shapes.clone() {
            if !reactants.is_disjoint(inhibitors) {
                continue;
            }
            let mut products = full;
            for x in 0..f.len() as u8 {
                let x = SubsetCode(x);
                if reactants.is_subset_of(x) && inhibitors.is_disjoint(x) {
                    products = products.intersection(f.apply(x));
                }
            }
            if !products.is_empty() {
                reactions.push(Reaction {
                    reactants,
                    inhibitors,
                    products,
                });
            }
        }
    }
    let system = ReactionSystem::new(n, reactions).expect("function width is valid");
    if system.res_function() == *f {
        return Ok(system);
    }
    let err = NotInM {
        union: first_violation(f, Law::Union),
        intersection: first_violation(f, Law::Intersection),
    };
    assert!(
        err.union.is_some() || err.intersection.is_some(),
        "a subadditive function is always specified by its maximal minimal system"
    );
    Err(err)
}
