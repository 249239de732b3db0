use serde::Serialize;

/// One phase event of a constructive solve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Divisibility { n: usize, p: usize, ok: bool },
    Threshold { min_degree: usize, threshold: String, met: bool },
    Extremality { kind: String, beta: String },
    Reservoir { attempt: usize, size: usize },
    Absorber { family: usize, vertices: usize, capacity: usize },
    Iteration { index: usize, case: String, size: usize, z_used: usize },
    RouteFailed { route: String, error: String },
    Fallback { budget: u64 },
    Finished { outcome: String },
}

/// Collects events; disabled traces drop everything.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    enabled: bool,
    events: Vec<TraceEvent>,
}

impl Trace {
    pub fn enabled() -> Self {
        Trace { enabled: true, events: Vec::new() }
    }

    pub fn disabled() -> Self {
        Trace::default()
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    pub fn push(&mut self, e: TraceEvent) {
        if self.enabled {
            self.events.push(e);
        }
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        self.events.iter().map(|e| serde_json::to_string(e).expect("trace events serialize") + "\n").collect()
    }
}
