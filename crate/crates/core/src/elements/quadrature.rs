use crate::error::{Error, Result};

/// Gauss-Legendre points on [-1, 1] (tensor products in 2D).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub points: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
}

fn line_rule(order: usize) -> Result<(&'static [f64], &'static [f64])> {
    const P1: [f64; 1] = [0.0];
    const W1: [f64; 1] = [2.0];
    const P2: [f64; 2] = [-0.577_350_269_189_625_8, 0.577_350_269_189_625_8];
    const W2: [f64; 2] = [1.0, 1.0];
    const P3: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
    const W3: [f64; 3] = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];
    const P4: [f64; 4] = [
        -0.861_136_311_594_052_6,
        -0.339_981_043_584_856_3,
        0.339_981_043_584_856_3,
        0.861_136_311_594_052_6,
    ];
    const W4: [f64; 4] = [
        0.347_854_845_137_453_9,
        0.652_145_154_862_546_1,
        0.652_145_154_862_546_1,
        0.347_854_845_137_453_9,
    ];
    const P5: [f64; 5] = [
        -0.906_179_845_938_664,
        -0.538_469_310_105_683,
        0.0,
        0.538_469_310_105_683,
        0.906_179_845_938_664,
    ];
    const W5: [f64; 5] = [
        0.236_926_885_056_189_1,
        0.478_628_670_499_366_5,
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
    ];
    Ok(match order {
        1 => (&P1, &W1),
        2 => (&P2, &W2),
        3 => (&P3, &W3),
        4 => (&P4, &W4),
        5 => (&P5, &W5),
        _ => return Err(Error::UnsupportedQuadrature(order)),
    })
}

pub fn gauss_legendre(order: usize, dim: usize) -> Result<QuadratureRule> {
    let (p, w) = line_rule(order)?;
    match dim {
        1 => Ok(QuadratureRule {
            points: p.iter().map(|&x| [x, 0.0]).collect(),
            weights: w.to_vec(),
        }),
        2 => {
            let mut rule = QuadratureRule {
                points: Vec::new(),
                weights: Vec::new(),
            };
            for (j, &eta) in p.iter().enumerate() {
                for (i, &xi) in p.iter().enumerate() {
                    rule.points.push([xi, eta]);
                    rule.weights.push(w[i] * w[j]);
                }
            }
            Ok(rule)
        }
        _ => Err(Error::InvalidArgument(format!(
            "quadrature dimension must be 1 or 2, got {dim}"
        ))),
    }
}
