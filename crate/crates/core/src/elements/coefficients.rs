use std::fmt;
use std::sync::Arc;

/// A coefficient that is either constant or a function of position.
#[derive(Clone)]
pub enum Field<T> {
    Constant(T),
    Function(Arc<dyn Fn([f64; 2]) -> T + Send + Sync>),
}

impl<T: Copy> Field<T> {
    pub fn function(f: impl Fn([f64; 2]) -> T + Send + Sync + 'static) -> Self {
        Field::Function(Arc::new(f))
    }

    pub fn at(&self, x: [f64; 2]) -> T {
        match self {
            Field::Constant(v) => *v,
            Field::Function(f) => f(x),
        }
    }

    pub fn constant_value(&self) -> Option<T> {
        match self {
            Field::Constant(v) => Some(*v),
            Field::Function(_) => None,
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for Field<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Constant(v) => write!(f, "Constant({v:?})"),
            Field::Function(_) => write!(f, "Function(..)"),
        }
    }
}

/// Coefficients of d^γu/dt^γ = -A·∇u + ∇·(D∇u) + P u + f.
///
/// With a `radial_weight` w(x) the operator is taken in the weighted form
/// w d^γu/dt^γ = -(wA)·∇u + ∇·(wD∇u) + w P u + w f, which is how radial
/// flow towards a well with A, D ∝ 1/w is discretized.
#[derive(Debug, Clone)]
pub struct CoefficientField {
    pub advection: Field<[f64; 2]>,
    pub diffusion: Field<[[f64; 2]; 2]>,
    pub reaction: Field<f64>,
    pub source: Field<f64>,
    pub radial_weight: Option<Field<f64>>,
}

impl CoefficientField {
    /// Pure isotropic diffusion with coefficient `k`.
    pub fn diffusion(k: f64) -> Self {
        Self {
            advection: Field::Constant([0.0, 0.0]),
            diffusion: Field::Constant([[k, 0.0], [0.0, k]]),
            reaction: Field::Constant(0.0),
            source: Field::Constant(0.0),
            radial_weight: None,
        }
    }

    pub fn with_advection(mut self, a: [f64; 2]) -> Self {
        self.advection = Field::Constant(a);
        self
    }

    pub fn with_reaction(mut self, p: f64) -> Self {
        self.reaction = Field::Constant(p);
        self
    }

    pub fn with_source(mut self, f: f64) -> Self {
        self.source = Field::Constant(f);
        self
    }

    pub fn with_tensor(mut self, d: [[f64; 2]; 2]) -> Self {
        self.diffusion = Field::Constant(d);
        self
    }

    pub fn with_radial_weight(mut self, w: Field<f64>) -> Self {
        self.radial_weight = Some(w);
        self
    }

    pub fn weight_at(&self, x: [f64; 2]) -> f64 {
        self.radial_weight.as_ref().map_or(1.0, |w| w.at(x))
    }

    /// Multiplies the diffusion tensor by `factor`.
    pub fn scale_diffusion(mut self, factor: f64) -> Self {
        self.diffusion = match self.diffusion {
            Field::Constant(d) => Field::Constant(scale2(d, factor)),
            Field::Function(f) => Field::function(move |x| scale2(f(x), factor)),
        };
        self
    }
}

fn scale2(d: [[f64; 2]; 2], s: f64) -> [[f64; 2]; 2] {
    [[d[0][0] * s, d[0][1] * s], [d[1][0] * s, d[1][1] * s]]
}
