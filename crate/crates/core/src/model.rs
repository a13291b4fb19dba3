//! A deformation class bundled with its lattice and its quadratic function.

use std::sync::OnceLock;

use crate::ade::simple_roots;
use crate::error::{Error, Result};
use crate::lattice::{enumerate_vectors, CoordinateSolver, PicClass, Sublattice};
use crate::pin::{find_basis_with_gram, Code, PinModel, Qhat, VanishingBasis};
use crate::real_forms::{
    bertini_dual, deformation_classes, lambda_basis, validate_embedding, ClassId, DeformationClass, LambdaEmbedding,
    QhatModelKind,
};

#[derive(Clone, Debug)]
pub struct RealModel {
    pub class: DeformationClass,
    pub embedding: LambdaEmbedding,
    pub pin: PinModel,
    solver: CoordinateSolver,
    roots: OnceLock<Result<Vec<PicClass>>>,
    norm4: OnceLock<Result<Vec<PicClass>>>,
}

impl RealModel {
    /// The standard model: stored embedding, and the code or vanishing basis
    /// the class is evaluated with.
    pub fn build(class: &DeformationClass) -> Result<Self> {
        let embedding = lambda_basis(class)?;
        let pin = match class.qhat_model {
            QhatModelKind::Code => PinModel::Code(Code::canonical(8 - class.rank_r)),
            QhatModelKind::VanishingRootBasis => PinModel::Vanishing(VanishingBasis::new(embedding.basis().to_vec())?),
        };
        Ok(Self::assemble(class.clone(), embedding, pin))
    }

    /// A model with a caller-supplied root basis on which the quadratic
    /// function vanishes. The basis goes through full embedding validation.
    pub fn with_vanishing_basis(class: &DeformationClass, basis: Vec<PicClass>) -> Result<Self> {
        let embedding = validate_embedding(class, basis.clone())?;
        let pin = PinModel::Vanishing(VanishingBasis::new(basis)?);
        Ok(Self::assemble(class.clone(), embedding, pin))
    }

    /// Replaces the quadratic function, keeping the lattice.
    pub fn with_pin(&self, pin: PinModel) -> Self {
        Self::assemble(self.class.clone(), self.embedding.clone(), pin)
    }

    fn assemble(class: DeformationClass, embedding: LambdaEmbedding, pin: PinModel) -> Self {
        let solver = CoordinateSolver::new(&embedding.sublattice);
        RealModel {
            class,
            embedding,
            pin,
            solver,
            roots: OnceLock::new(),
            norm4: OnceLock::new(),
        }
    }

    /// The Bertini-dual side, realised on the orthogonal complement of this
    /// lattice with its own simple roots as vanishing basis.
    pub fn complement_model(&self) -> Result<Self> {
        let dual = bertini_dual(&self.class);
        let comp = self.embedding.complement()?;
        let roots = enumerate_vectors(&comp, -2)?;
        let basis = simple_roots(&roots)?;
        let embedding = validate_embedding(&dual, basis.clone())?;
        let pin = PinModel::Vanishing(VanishingBasis::new(basis)?);
        Ok(Self::assemble(dual, embedding, pin))
    }

    /// A root basis of `Λ` with the stored Gram matrix on which the current
    /// function vanishes. Any such basis spans `Λ`, since both have the same
    /// determinant.
    pub fn equivalent_vanishing_basis(&self) -> Result<Option<Vec<PicClass>>> {
        let mut candidates = Vec::new();
        for e in self.roots()? {
            if self.qhat(&e)? == Qhat::ZERO {
                candidates.push(e);
            }
        }
        Ok(find_basis_with_gram(self.embedding.basis(), &candidates))
    }

    pub fn id(&self) -> ClassId {
        self.class.id
    }

    pub fn rank(&self) -> usize {
        self.class.rank_r
    }

    pub fn lattice(&self) -> &Sublattice {
        &self.embedding.sublattice
    }

    pub fn contains(&self, v: &PicClass) -> bool {
        self.solver.solve(v).is_ok()
    }

    /// Quadratic value of a class of `Λ`.
    pub fn qhat(&self, v: &PicClass) -> Result<Qhat> {
        if !self.contains(v) {
            return Err(Error::NotInSpan(v.to_string()));
        }
        self.pin.qhat(v)
    }

    /// Roots of `Λ`, enumerated once per model.
    pub fn roots(&self) -> Result<Vec<PicClass>> {
        self.roots.get_or_init(|| enumerate_vectors(self.lattice(), -2)).clone()
    }

    /// Vectors of square `-4` in `Λ`, enumerated once per model.
    pub fn norm4(&self) -> Result<Vec<PicClass>> {
        self.norm4.get_or_init(|| enumerate_vectors(self.lattice(), -4)).clone()
    }
}

/// Models for all eleven classes, in the order of [`ClassId::ALL`].
#[derive(Clone, Debug)]
pub struct Catalog {
    models: Vec<RealModel>,
}

impl Catalog {
    pub fn standard() -> Result<Self> {
        let models = deformation_classes()
            .iter()
            .map(RealModel::build)
            .collect::<Result<_>>()?;
        Ok(Catalog { models })
    }

    pub fn models(&self) -> &[RealModel] {
        &self.models
    }

    pub fn get(&self, id: ClassId) -> &RealModel {
        self.models
            .iter()
            .find(|m| m.id() == id)
            .expect("catalog holds every class")
    }

    /// Swaps in a different model for one class.
    pub fn replace(&mut self, model: RealModel) {
        let id = model.id();
        for m in self.models.iter_mut() {
            if m.id() == id {
                *m = model;
                return;
            }
        }
    }

    /// The model used for the dual side of `id`: the dual class's own model,
    /// or for self-dual classes a model on the actual complement lattice.
    pub fn dual_of(&self, id: ClassId) -> Result<RealModel> {
        let m = self.get(id);
        if m.class.is_self_dual() {
            m.complement_model()
        } else {
            Ok(self.get(m.class.bertini_dual_id).clone())
        }
    }
}
