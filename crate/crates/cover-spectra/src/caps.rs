//! Size caps for the exponential searches.
//!
//! Every enumeration in this crate is exponential by design; the caps turn
//! runaway inputs into clean errors instead of hangs. Override via
//! `Caps::from_env()` (COVER_SPECTRA_* variables) or CLI flags.

#[derive(Clone, Debug)]
pub struct Caps {
    /// Vertex cap for subset enumerations (Aomoto brute force, packings).
    pub enum_vertices: usize,
    /// Edge cap for cycle/packing enumerations.
    pub enum_edges: usize,
    /// Vertex cap for the memoized matching-polynomial recursion.
    pub mu_vertices: usize,
    /// Vertex cap for exact characteristic polynomials (Faddeev-LeVerrier).
    pub char_vertices: usize,
    /// Vertex cap for constructed quotient covers.
    pub cover_vertices: usize,
    /// Vertex cap for truncated universal-cover balls.
    pub ball_vertices: usize,
    /// Matrix-dimension cap for the floating eigensolver probe.
    pub probe_dimension: usize,
    /// Frontier cap for subset brute force in the Hall-surplus checks.
    pub frontier: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enum_vertices: 16,
            enum_edges: 24,
            mu_vertices: 26,
            char_vertices: 64,
            cover_vertices: 20_000,
            ball_vertices: 4096,
            probe_dimension: 1500,
            frontier: 20,
        }
    }
}

impl Caps {
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        let read = |name: &str| -> Option<usize> {
            std::env::var(name).ok().and_then(|v| v.parse().ok())
        };
        if let Some(v) = read("COVER_SPECTRA_MAX_ENUM_V") {
            caps.enum_vertices = v;
        }
        if let Some(v) = read("COVER_SPECTRA_MAX_ENUM_E") {
            caps.enum_edges = v;
        }
        if let Some(v) = read("COVER_SPECTRA_MAX_MU_V") {
            caps.mu_vertices = v;
        }
        if let Some(v) = read("COVER_SPECTRA_MAX_CHAR_V") {
            caps.char_vertices = v;
        }
        if let Some(v) = read("COVER_SPECTRA_MAX_COVER_V") {
            caps.cover_vertices = v;
        }
        if let Some(v) = read("COVER_SPECTRA_MAX_BALL_V") {
            caps.ball_vertices = v;
        }
        if let Some(v) = read("COVER_SPECTRA_MAX_PROBE_DIM") {
            caps.probe_dimension = v;
        }
        if let Some(v) = read("COVER_SPECTRA_MAX_FRONTIER") {
            caps.frontier = v;
        }
        caps
    }
}
