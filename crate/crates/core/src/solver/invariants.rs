use crate::spectral::{Field, Trajectory};

/// `int u^2`.
pub fn mass(u: &Field) -> f64 {
    u.spectral_energy()
}

/// `int u |D| u + (1/3) int u^3`; the cubic term is exact on the grid for dealiased data.
pub fn hamiltonian(u: &Field) -> f64 {
    let g = u.grid();
    let quad: f64 = u.spectrum().iter().enumerate().map(|(k, c)| g.wavenumber(k).abs() * c.norm_sqr()).sum::<f64>() * g.length();
    let cubic: f64 = u.values().iter().map(|v| v.re.powi(3)).sum::<f64>() * g.dx();
    quad + cubic / 3.0
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LedgerRow {
    pub t: f64,
    pub mean: f64,
    pub mass: f64,
    pub hamiltonian: f64,
}

/// Conserved quantities at every recorded time.
#[derive(Clone, Debug, PartialEq)]
pub struct ConservationLedger {
    pub rows: Vec<LedgerRow>,
}

impl ConservationLedger {
    pub fn from_trajectory(traj: &Trajectory) -> Self {
        let rows = traj
            .times()
            .iter()
            .zip(traj.frames())
            .map(|(&t, u)| LedgerRow { t, mean: u.mean().re, mass: mass(u), hamiltonian: hamiltonian(u) })
            .collect();
        Self { rows }
    }

    fn drift(&self, f: impl Fn(&LedgerRow) -> f64) -> f64 {
        let q0 = f(&self.rows[0]);
        let scale = q0.abs().max(1e-300);
        self.rows.iter().map(|r| (f(r) - q0).abs()).fold(0.0, f64::max) / scale
    }

    /// Largest relative deviation of the mass from its initial value.
    pub fn mass_drift(&self) -> f64 {
        self.drift(|r| r.mass)
    }

    pub fn hamiltonian_drift(&self) -> f64 {
        self.drift(|r| r.hamiltonian)
    }

    /// Absolute mean drift (the mean may vanish).
    pub fn mean_drift(&self) -> f64 {
        let m0 = self.rows[0].mean;
        self.rows.iter().map(|r| (r.mean - m0).abs()).fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,mean,mass,hamiltonian\n");
        for r in &self.rows {
            s.push_str(&format!("{:.16e},{:.16e},{:.16e},{:.16e}\n", r.t, r.mean, r.mass, r.hamiltonian));
        }
        s
    }
}
