use hpclifford::clifford::ModuliPoint;
use hpclifford::exactfield::{parse_cyc, CycNum};
use hpclifford::{Error, Result};

use crate::Coords;

/// Parse a `--point` argument. A full coordinate list is projective; one
/// coordinate fewer is affine with the leading coordinate set to 1.
pub fn parse_point(p: u32, input: &str, coords: Coords) -> Result<ModuliPoint> {
    let s = input.trim();
    if s.eq_ignore_ascii_case("inf") || s == "∞" {
        return ModuliPoint::infinity(p);
    }
    let vals = s.split(',').map(|t| parse_cyc(p, t.trim())).collect::<Result<Vec<CycNum>>>()?;
    let h = (p as usize - 1) / 2;
    match coords {
        Coords::A => {
            if vals.len() == h + 1 {
                ModuliPoint::new(p, vals)
            } else if vals.len() == h {
                let mut full = vec![CycNum::from_int(p, 1)];
                full.extend(vals);
                ModuliPoint::new(p, full)
            } else {
                Err(Error::Arity {
                    expected: h + 1,
                    got: vals.len(),
                })
            }
        }
        Coords::Abc => {
            if p != 5 {
                return Err(Error::InvalidInput("(A:B:C) coordinates exist only at p = 5".into()));
            }
            match <[CycNum; 3]>::try_from(vals) {
                Ok([a, b, c]) => ModuliPoint::from_abc(a, b, c),
                Err(v) if v.len() == 2 => ModuliPoint::from_ab(v[0].clone(), v[1].clone()),
                Err(v) => Err(Error::Arity { expected: 3, got: v.len() }),
            }
        }
    }
}
