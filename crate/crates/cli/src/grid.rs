//! Parameter values given on the command line: a single number or a
//! `start:stop:count` grid.

use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Spec {
    Value(f64),
    Grid { start: f64, stop: f64, count: usize },
}

impl FromStr for Spec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("not a number: {t:?}"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(Spec::Value(num(v)?)),
            [a, b, n] => {
                let count: usize = n
                    .trim()
                    .parse()
                    .map_err(|_| format!("grid count must be a positive integer, got {n:?}"))?;
                if count == 0 {
                    return Err("grid count must be at least 1".into());
                }
                Ok(Spec::Grid {
                    start: num(a)?,
                    stop: num(b)?,
                    count,
                })
            }
            _ => Err(format!("expected a number or start:stop:count, got {s:?}")),
        }
    }
}

impl Spec {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            Spec::Value(v) => vec![v],
            Spec::Grid {
                start, count: 1, ..
            } => vec![start],
            Spec::Grid { start, stop, count } => {
                let step = (stop - start) / (count - 1) as f64;
                (0..count)
                    .map(|i| {
                        if i + 1 == count {
                            stop
                        } else {
                            start + step * i as f64
                        }
                    })
                    .collect()
            }
        }
    }

    pub fn is_scalar(&self) -> bool {
        matches!(self, Spec::Value(_))
    }
}

/// Cartesian product in row-major order: the last axis varies fastest.
pub fn cartesian(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut rows = vec![Vec::with_capacity(axes.len())];
    for axis in axes {
        rows = rows
            .into_iter()
            .flat_map(|r| {
                axis.iter().map(move |&v| {
                    let mut next = r.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_scalars_and_grids() {
        assert_eq!("-1".parse::<Spec>().unwrap(), Spec::Value(-1.0));
        assert_eq!(
            "0:1:5".parse::<Spec>().unwrap(),
            Spec::Grid {
                start: 0.0,
                stop: 1.0,
                count: 5
            }
        );
        assert!("0:1:0".parse::<Spec>().is_err());
        assert!("0:1".parse::<Spec>().is_err());
    }

    #[test]
    fn grid_hits_both_ends() {
        let v = Spec::Grid {
            start: 0.1,
            stop: 0.7,
            count: 4,
        }
        .values();
        assert_eq!(v.len(), 4);
        assert_eq!(v[0], 0.1);
        assert_eq!(v[3], 0.7);
    }

    #[test]
    fn cartesian_is_row_major() {
        let rows = cartesian(&[vec![1.0, 2.0], vec![3.0, 4.0, 5.0]]);
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[1], vec![1.0, 4.0]);
        assert_eq!(rows[3], vec![2.0, 3.0]);
    }
}
