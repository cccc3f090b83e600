//! Certified two-sided bounds on the bi-Lipschitz constant of a section map.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::address::Address;
use crate::analysis::descendants;
use crate::error::Error;
use crate::interval::Interval;
use crate::rational::Rational;

use super::SectionPairingMap;

/// `lower <= C <= upper` for the smallest `C` with
/// `C⁻¹|x - y| <= |f(x) - f(y)| <= C|x - y|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LipschitzBounds {
    pub lower: Rational,
    pub upper: Rational,
    pub depth_used: usize,
}

struct Piece {
    address: Address,
    piece: usize,
    source: Interval,
    image: Interval,
}

fn worse(a: &Rational, b: &Rational) -> Rational {
    // max(a / b, b / a) for positive a, b
    if a >= b {
        a / b
    } else {
        b / a
    }
}

/// Bounds from all rank-`depth` cylinders of `E`.
///
/// Lower: exact within-piece ratios and the distortion between every pair of
/// cylinder extreme points (points of `E`). Upper: exact within-piece ratios,
/// and for cylinders `P`, `Q` in different pieces the hull-over-distance
/// estimate in both directions.
pub fn lipschitz_bounds(map: &SectionPairingMap, depth: usize, budget: u64) -> Result<LipschitzBounds, Error> {
    let section_depth = map.source_depth();
    if depth < section_depth {
        return Err(Error::NotApplicable(format!(
            "depth {depth} is below the section depth {section_depth}"
        )));
    }
    let cells: Vec<Piece> = descendants(map.source(), &Address::root(), depth, budget)?
        .into_iter()
        .map(|b| {
            let piece = map.piece_of(&b.address).expect("depth covers the section");
            let image = map.image_of_cylinder(&b.address).pop().expect("single image");
            Piece {
                source: map.source().hull_within(&b.interval, depth),
                image: map.target().cylinder_hull(&image).expect("valid image"),
                address: b.address,
                piece,
            }
        })
        .collect();

    let within = (0..map.pairs().len())
        .map(|i| {
            let rho = map.piece_ratio(i);
            worse(&rho, &Rational::one())
        })
        .max()
        .expect("a section is nonempty");

    let points: Vec<(Rational, Rational)> = cells
        .iter()
        .flat_map(|c| {
            [
                (c.source.left.clone(), c.image.left.clone()),
                (c.source.right.clone(), c.image.right.clone()),
            ]
        })
        .collect();
    let pointwise = (0..points.len())
        .into_par_iter()
        .filter_map(|i| {
            let (x, fx) = &points[i];
            points[i + 1..]
                .iter()
                .filter(|(y, _)| y != x)
                .filter_map(|(y, fy)| {
                    let dx = (x - y).abs();
                    let dy = (fx - fy).abs();
                    (!dy.is_zero()).then(|| worse(&dx, &dy))
                })
                .max()
        })
        .max();
    let lower = match pointwise {
        Some(p) if p > within => p,
        _ => within.clone(),
    };

    let cross = (0..cells.len())
        .into_par_iter()
        .map(|i| {
            let p = &cells[i];
            let mut best: Option<Rational> = None;
            for q in &cells[i + 1..] {
                if q.piece == p.piece {
                    continue;
                }
                let d_src = p.source.distance(&q.source);
                let d_img = p.image.distance(&q.image);
                if d_src.is_zero() || d_img.is_zero() {
                    return Err(Error::TouchingCylinders {
                        rank: depth,
                        first: p.address.clone(),
                        second: q.address.clone(),
                    });
                }
                let forward = p.image.hull(&q.image).length() / d_src;
                let backward = p.source.hull(&q.source).length() / d_img;
                let local = forward.max(backward);
                if best.as_ref().is_none_or(|b| &local > b) {
                    best = Some(local);
                }
            }
            Ok(best)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let upper = cross.into_iter().flatten().fold(within, |acc, v| acc.max(v));
    Ok(LipschitzBounds {
        lower,
        upper,
        depth_used: depth,
    })
}
