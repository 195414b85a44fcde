//! Lower convex hulls of finite point sets with exact rational coordinates.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::ArithError;

pub type Point = (BigRational, BigRational);

/// Vertex chain of the lower convex hull, from min-x to max-x.
///
/// Points sharing an x-coordinate are collapsed to the lowest one. Collinear
/// interior points are dropped, so consecutive slopes are strictly increasing.
pub fn lower_convex_hull(points: &[Point]) -> Result<Vec<Point>, ArithError> {
    if points.is_empty() {
        return Err(ArithError::EmptyInput);
    }
    let mut lowest: BTreeMap<BigRational, BigRational> = BTreeMap::new();
    for (x, y) in points {
        lowest
            .entry(x.clone())
            .and_modify(|v| {
                if y < v {
                    *v = y.clone();
                }
            })
            .or_insert_with(|| y.clone());
    }
    let mut hull: Vec<Point> = Vec::new();
    for (x, y) in lowest {
        while hull.len() >= 2 {
            let (ax, ay) = &hull[hull.len() - 2];
            let (bx, by) = &hull[hull.len() - 1];
            // keep b only if it lies strictly below the chord a -> (x, y)
            let cross = (bx - ax) * (&y - ay) - (by - ay) * (&x - ax);
            if cross <= BigRational::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    Ok(hull)
}

/// Slopes between consecutive vertices.
pub fn hull_slopes(vertices: &[Point]) -> Vec<BigRational> {
    vertices
        .windows(2)
        .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| (rat(x, 1), rat(y, 1))).collect()
    }

    #[test]
    fn examples() {
        let h = lower_convex_hull(&pts(&[(0, 3), (1, 1), (2, 0)])).unwrap();
        assert_eq!(h, pts(&[(0, 3), (1, 1), (2, 0)]));
        let h = lower_convex_hull(&pts(&[(0, 0), (1, 5), (2, 0)])).unwrap();
        assert_eq!(h, pts(&[(0, 0), (2, 0)]));
        let h = lower_convex_hull(&pts(&[(0, 0)])).unwrap();
        assert_eq!(h, pts(&[(0, 0)]));
        assert_eq!(lower_convex_hull(&[]), Err(ArithError::EmptyInput));
    }

    #[test]
    fn duplicate_x_keeps_minimum_and_collinear_points_drop() {
        let h = lower_convex_hull(&pts(&[(0, 4), (0, 2), (1, 1), (2, 0), (4, 0)])).unwrap();
        assert_eq!(h, pts(&[(0, 2), (2, 0), (4, 0)]));
    }

    proptest! {
        #[test]
        fn hull_is_convex_and_below_all_points(
            raw in prop::collection::vec((-20i64..20, -20i64..20, 1i64..4), 1..12)
        ) {
            let points: Vec<Point> = raw.iter().map(|&(x, y, d)| (rat(x, 1), rat(y, d))).collect();
            let hull = lower_convex_hull(&points).unwrap();
            let slopes = hull_slopes(&hull);
            for w in slopes.windows(2) {
                prop_assert!(w[0] < w[1]);
            }
            for (x, y) in &points {
                // locate the segment containing x and compare heights
                let seg = hull.windows(2).find(|w| &w[0].0 <= x && x <= &w[1].0);
                let height = match seg {
                    Some(w) => &w[0].1 + (&w[1].1 - &w[0].1) * (x - &w[0].0) / (&w[1].0 - &w[0].0),
                    None => hull[0].1.clone(),
                };
                prop_assert!(y >= &height);
            }
        }
    }
}
