use super::CoeffSchedule;

/// Values `p_k(𝟏)`, `q_k(𝟏)` and running products `Π_{j≤k}(1 + a_j²)`,
/// indexed `0..=n`.
///
/// These do not depend on the frequencies: at `z = 𝟏` every monomial is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarTrace {
    pub p1: Vec<f64>,
    pub q1: Vec<f64>,
    pub flat: Vec<f64>,
}

impl ScalarTrace {
    pub fn n(&self) -> usize {
        self.p1.len() - 1
    }

    /// `ω^q_k = a_k·q_{k−1}(𝟏)` for `k = 1..n`.
    pub fn omega_q(&self, a: &CoeffSchedule) -> Vec<f64> {
        (1..=self.n()).map(|k| a.a(k) * self.q1[k - 1]).collect()
    }

    /// `ω^p_k = a_k·p_{k−1}(𝟏)` for `k = 1..n`.
    pub fn omega_p(&self, a: &CoeffSchedule) -> Vec<f64> {
        (1..=self.n()).map(|k| a.a(k) * self.p1[k - 1]).collect()
    }
}

pub fn scalar_trace(schedule: &CoeffSchedule) -> ScalarTrace {
    let n = schedule.n();
    let mut p1 = Vec::with_capacity(n + 1);
    let mut q1 = Vec::with_capacity(n + 1);
    let mut flat = Vec::with_capacity(n + 1);
    let (mut p, mut q, mut f) = (0.0f64, 1.0f64, 1.0f64);
    p1.push(p);
    q1.push(q);
    flat.push(f);
    for &a in schedule.values() {
        (p, q) = (p + a * q, q - a * p);
        f *= 1.0 + a * a;
        p1.push(p);
        q1.push(q);
        flat.push(f);
    }
    ScalarTrace { p1, q1, flat }
}
