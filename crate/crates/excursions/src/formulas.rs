use hyperbolic::Complex64;

use crate::error::ExcursionError;

/// The horoball {Im z > k} at the cusp of the half-plane frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Horoball {
    level: f64,
}

impl Horoball {
    pub fn new(level: f64) -> Result<Self, ExcursionError> {
        if !(level > 0.0) || !level.is_finite() {
            return Err(ExcursionError::BadLevel(level));
        }
        Ok(Self { level })
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.im > self.level
    }

    /// Length of the horocycle Im z = k modulo z -> z + 1.
    pub fn boundary_length(&self) -> f64 {
        1.0 / self.level
    }
}

/// d(z, z + n) = 2 asinh(|n| / (2 Im z)).
pub fn excursion_length(z: Complex64, n: i64) -> Result<f64, ExcursionError> {
    if n == 0 {
        return Err(ExcursionError::ZeroWinding);
    }
    if !(z.im > 0.0) {
        return Err(ExcursionError::NotInHalfPlane(z.im));
    }
    Ok(2.0 * (n.unsigned_abs() as f64 / (2.0 * z.im)).asinh())
}

/// Length of the part of a geodesic semicircle of radius `apex` lying above
/// height `level`.
pub fn horoball_chord(apex: f64, level: f64) -> Result<f64, ExcursionError> {
    if !(level > 0.0) {
        return Err(ExcursionError::BadLevel(level));
    }
    if apex < level {
        return Err(ExcursionError::NoEntry { apex, level });
    }
    Ok(2.0 * (apex / level).acosh())
}

/// A maximal arc of a ray inside the horoball of level k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Excursion {
    pub entry_time: f64,
    pub exit_time: f64,
    /// Whole strips crossed: the integer part of the horizontal displacement.
    pub winding: u64,
    pub level: f64,
    pub length: f64,
    /// Horizontal displacement between entry and exit.
    pub displacement: f64,
}

impl Excursion {
    /// Excursion along a full semicircle of radius `apex` above level k.
    pub fn from_chord(apex: f64, level: f64, entry_time: f64) -> Result<Self, ExcursionError> {
        let length = horoball_chord(apex, level)?;
        let displacement = 2.0 * (apex * apex - level * level).max(0.0).sqrt();
        Ok(Self {
            entry_time,
            exit_time: entry_time + length,
            winding: displacement.floor() as u64,
            level,
            length,
            displacement,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichReport {
    pub lower: f64,
    pub half_length: f64,
    pub upper: f64,
    /// half_length - lower; nonnegative when the left inequality holds.
    pub lower_slack: f64,
    /// upper - half_length; positive when the right inequality holds.
    pub upper_slack: f64,
    pub ok: bool,
}

/// asinh(L w / 2) <= l / 2 < asinh(L w / 2 + 1) for an excursion of winding
/// number w and length l in a cusp whose horocycle has length L.
pub fn sandwich_check(ex: &Excursion, horocycle_length: f64) -> SandwichReport {
    let a = horocycle_length * ex.winding as f64 / 2.0;
    let lower = a.asinh();
    let upper = (a + 1.0).asinh();
    let half_length = ex.length / 2.0;
    let lower_slack = half_length - lower;
    let upper_slack = upper - half_length;
    SandwichReport {
        lower,
        half_length,
        upper,
        lower_slack,
        upper_slack,
        ok: lower_slack >= -1e-12 && upper_slack > 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperbolic::half_plane_dist;

    #[test]
    fn excursion_length_examples() {
        for k in [0.5, 1.0, 3.0] {
            let z = Complex64::new(0.3, k);
            let n = (2.0 * k) as i64;
            if n as f64 == 2.0 * k {
                let l = excursion_length(z, n).unwrap();
                assert!((l - 2.0 * 1f64.asinh()).abs() < 1e-12);
                assert!((l - 1.7627471740390861).abs() < 1e-12);
            }
            assert_eq!(excursion_length(z, 5).unwrap(), excursion_length(z, -5).unwrap());
            let d = half_plane_dist(z, z + 7.0);
            assert!((excursion_length(z, 7).unwrap() - d).abs() < 1e-12);
        }
        assert_eq!(excursion_length(Complex64::new(0.0, 1.0), 0), Err(ExcursionError::ZeroWinding));
        let ratio = excursion_length(Complex64::new(0.0, 1.0), 1_000_000).unwrap() / (2.0 * 1e6f64.ln());
        assert!((ratio - 1.0).abs() < 0.01);
    }

    #[test]
    fn chord_examples() {
        assert_eq!(horoball_chord(2.0, 2.0).unwrap(), 0.0);
        assert!((horoball_chord(2.0, 1.0).unwrap() - 2.6339157938496336).abs() < 1e-12);
        assert!(horoball_chord(0.5, 1.0).is_err());
    }

    #[test]
    fn tangent_excursion_is_trivial() {
        let ex = Excursion::from_chord(1.0, 1.0, 0.0).unwrap();
        assert_eq!(ex.winding, 0);
        let r = sandwich_check(&ex, 1.0);
        assert!(r.ok);
        assert_eq!(r.half_length, 0.0);
    }
}
