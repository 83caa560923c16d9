//! The scenario file format: a JSON object with `schema_version` and a
//! `scenario` tree. Every problem in a document is collected and reported
//! together, each prefixed with the key path it concerns.

use qclock_core::{
    ClockModel, ComplexValue, ConstantsPreset, Error as CoreError, GaussianPhotonState,
    GeometrySpec, InternalState, Level, PathSegment, PhysicalConstants, PureDiscreteState,
    Scenario, Spacing, Sweep, SweepVariable, ThermalHarmonicState,
};
use serde_json::{json, Map, Value};

use crate::error::DocumentError;

pub const SCHEMA_VERSION: u64 = 1;

const GEOMETRY_BLOCKS: [&str; 4] = ["gravitational", "rotating", "photon_delay", "custom"];
const CLOCK_TYPES: [&str; 5] = [
    "two_level",
    "pure_discrete",
    "gaussian_photon",
    "thermal_harmonic",
    "thermal_high_t",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    /// Reject unknown keys instead of warning about them.
    pub strict: bool,
    /// Takes precedence over the document's `constants` key.
    pub constants: Option<ConstantsPreset>,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self {
            strict: true,
            constants: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedScenario {
    pub scenario: Scenario,
    /// Unknown keys tolerated by a relaxed parse.
    pub warnings: Vec<String>,
}

struct Collector {
    strict: bool,
    errors: Vec<String>,
    warnings: Vec<String>,
}

impl Collector {
    fn error(&mut self, path: &str, msg: impl std::fmt::Display) {
        self.errors.push(format!("{path}: {msg}"));
    }

    fn check_keys(&mut self, obj: &Map<String, Value>, path: &str, allowed: &[&str]) {
        for key in obj.keys() {
            if !allowed.contains(&key.as_str()) {
                let msg = format!("{path}: unknown key `{key}`");
                if self.strict {
                    self.errors.push(msg);
                } else {
                    self.warnings.push(msg);
                }
            }
        }
    }

    fn object<'v>(&mut self, v: &'v Value, path: &str) -> Option<&'v Map<String, Value>> {
        let obj = v.as_object();
        if obj.is_none() {
            self.error(path, "expected an object");
        }
        obj
    }

    fn number_value(&mut self, v: &Value, path: &str) -> Option<f64> {
        match v.as_f64() {
            Some(x) => Some(x),
            None => {
                self.error(path, "expected a number");
                None
            }
        }
    }

    fn opt_number(&mut self, obj: &Map<String, Value>, path: &str, key: &str) -> Option<f64> {
        let v = obj.get(key)?;
        self.number_value(v, &join(path, key))
    }

    fn number(&mut self, obj: &Map<String, Value>, path: &str, key: &str) -> Option<f64> {
        if !obj.contains_key(key) {
            self.error(&join(path, key), "missing required key");
            return None;
        }
        self.opt_number(obj, path, key)
    }

    fn string<'v>(
        &mut self,
        obj: &'v Map<String, Value>,
        path: &str,
        key: &str,
    ) -> Option<&'v str> {
        match obj.get(key) {
            None => {
                self.error(&join(path, key), "missing required key");
                None
            }
            Some(Value::String(s)) => Some(s),
            Some(_) => {
                self.error(&join(path, key), "expected a string");
                None
            }
        }
    }

    fn array<'v>(
        &mut self,
        obj: &'v Map<String, Value>,
        path: &str,
        key: &str,
    ) -> Option<&'v [Value]> {
        match obj.get(key) {
            None => {
                self.error(&join(path, key), "missing required key");
                None
            }
            Some(Value::Array(a)) => Some(a),
            Some(_) => {
                self.error(&join(path, key), "expected an array");
                None
            }
        }
    }

    fn numbers(&mut self, obj: &Map<String, Value>, path: &str, key: &str) -> Option<Vec<f64>> {
        let items = self.array(obj, path, key)?;
        let p = join(path, key);
        let parsed: Vec<Option<f64>> = items
            .iter()
            .enumerate()
            .map(|(i, v)| self.number_value(v, &format!("{p}[{i}]")))
            .collect();
        parsed.into_iter().collect()
    }
}

fn join(path: &str, key: &str) -> String {
    format!("{path}.{key}")
}

/// Parses and fully validates a scenario document.
pub fn parse_scenario(text: &str, options: ParseOptions) -> Result<ParsedScenario, DocumentError> {
    let root: Value = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut c = Collector {
        strict: options.strict,
        errors: Vec::new(),
        warnings: Vec::new(),
    };
    let scenario = read_document(&mut c, &root, options);
    match scenario {
        Some(s) if c.errors.is_empty() => Ok(ParsedScenario {
            scenario: s,
            warnings: c.warnings,
        }),
        _ => Err(DocumentError::Invalid(c.errors)),
    }
}

fn read_document(c: &mut Collector, root: &Value, options: ParseOptions) -> Option<Scenario> {
    let top = c.object(root, "document")?;
    c.check_keys(top, "document", &["schema_version", "scenario"]);
    match top.get("schema_version") {
        None => c.error("schema_version", "missing required key"),
        Some(v) if v.as_u64() == Some(SCHEMA_VERSION) => {}
        Some(v) => c.error(
            "schema_version",
            format!("unsupported version {v}, expected {SCHEMA_VERSION}"),
        ),
    }
    let Some(body) = top.get("scenario") else {
        c.error("scenario", "missing required key");
        return None;
    };
    let s = c.object(body, "scenario")?;
    let path = "scenario";
    c.check_keys(
        s,
        path,
        &["name", "constants", "mass_kg", "clock", "geometry", "sweep"],
    );

    let name = match s.get("name") {
        None => None,
        Some(Value::String(n)) => Some(n.clone()),
        Some(_) => {
            c.error("scenario.name", "expected a string");
            None
        }
    };
    let doc_constants = match s.get("constants") {
        None => Some(ConstantsPreset::default()),
        Some(Value::String(n)) => {
            let preset = ConstantsPreset::from_name(n);
            if preset.is_none() {
                c.error(
                    "scenario.constants",
                    format!("unknown preset `{n}`, expected `si` or `paper_rounded`"),
                );
            }
            preset
        }
        Some(_) => {
            c.error("scenario.constants", "expected a string");
            None
        }
    };
    let constants = options.constants.or(doc_constants).unwrap_or_default();
    let phys = constants.constants();
    let mass = c.number(s, path, "mass_kg");
    let clock = match s.get("clock") {
        Some(v) => read_clock(c, v, "scenario.clock", &phys),
        None => {
            c.error("scenario.clock", "missing required key");
            None
        }
    };
    let geometry = match s.get("geometry") {
        Some(v) => read_geometry(c, v, "scenario.geometry", &phys),
        None => {
            c.error("scenario.geometry", "missing required key");
            None
        }
    };
    let sweep = match s.get("sweep") {
        Some(v) => read_sweep(c, v, "scenario.sweep"),
        None => {
            c.error("scenario.sweep", "missing required key");
            None
        }
    };

    let scenario = Scenario {
        name,
        clock: clock?,
        geometry: geometry?,
        mass: mass?,
        sweep: sweep?,
        constants,
    };
    match scenario.validate() {
        Ok(()) => Some(scenario),
        Err(CoreError::Scenario(errors)) => {
            c.errors
                .extend(errors.into_iter().map(|e| format!("scenario.{e}")));
            None
        }
        Err(e) => {
            c.error("scenario", e);
            None
        }
    }
}

fn read_clock(
    c: &mut Collector,
    v: &Value,
    path: &str,
    phys: &PhysicalConstants,
) -> Option<ClockModel> {
    let obj = c.object(v, path)?;
    let kind = c.string(obj, path, "type")?;
    let state = |r: qclock_core::Result<InternalState>, c: &mut Collector| match r {
        Ok(s) => Some(ClockModel::State(s)),
        Err(e) => {
            c.error(path, e);
            None
        }
    };
    match kind {
        "two_level" => {
            c.check_keys(obj, path, &["type", "frequency_rad_per_s", "energies_j"]);
            match (obj.get("frequency_rad_per_s"), obj.get("energies_j")) {
                (Some(_), None) => {
                    let nu = c.number(obj, path, "frequency_rad_per_s")?;
                    state(
                        PureDiscreteState::from_transition_frequency(nu, phys)
                            .map(InternalState::Pure),
                        c,
                    )
                }
                (None, Some(_)) => {
                    let e = c.numbers(obj, path, "energies_j")?;
                    if e.len() != 2 {
                        c.error(&join(path, "energies_j"), "expected exactly two energies");
                        return None;
                    }
                    state(
                        PureDiscreteState::two_level(e[0], e[1]).map(InternalState::Pure),
                        c,
                    )
                }
                _ => {
                    c.error(
                        path,
                        "give exactly one of `frequency_rad_per_s` and `energies_j`",
                    );
                    None
                }
            }
        }
        "pure_discrete" => {
            c.check_keys(obj, path, &["type", "levels"]);
            let items = c.array(obj, path, "levels")?;
            let mut levels = Vec::with_capacity(items.len());
            let mut ok = true;
            for (i, item) in items.iter().enumerate() {
                let p = format!("{path}.levels[{i}]");
                match read_level(c, item, &p) {
                    Some(l) => levels.push(l),
                    None => ok = false,
                }
            }
            if !ok {
                return None;
            }
            state(PureDiscreteState::new(levels).map(InternalState::Pure), c)
        }
        "gaussian_photon" => {
            c.check_keys(
                obj,
                path,
                &["type", "center_frequency_rad_per_s", "width_s"],
            );
            let nu0 = c.number(obj, path, "center_frequency_rad_per_s");
            let a = c.number(obj, path, "width_s");
            state(
                GaussianPhotonState::new(nu0?, a?).map(InternalState::Gaussian),
                c,
            )
        }
        "thermal_harmonic" => {
            c.check_keys(
                obj,
                path,
                &["type", "mode_frequencies_rad_per_s", "temperature_k"],
            );
            let modes = c.numbers(obj, path, "mode_frequencies_rad_per_s");
            let t = c.number(obj, path, "temperature_k");
            state(
                ThermalHarmonicState::new(modes?, t?).map(InternalState::Thermal),
                c,
            )
        }
        "thermal_high_t" => {
            c.check_keys(obj, path, &["type", "mode_count", "temperature_k"]);
            let n = c.number(obj, path, "mode_count");
            let t = c.number(obj, path, "temperature_k");
            Some(ClockModel::HighTemperature {
                mode_count: n?,
                temperature: t?,
            })
        }
        other => {
            c.error(
                &join(path, "type"),
                format!(
                    "unknown clock type `{other}`, expected one of {}",
                    CLOCK_TYPES.join(", ")
                ),
            );
            None
        }
    }
}

fn read_level(c: &mut Collector, v: &Value, path: &str) -> Option<Level> {
    let obj = c.object(v, path)?;
    c.check_keys(obj, path, &["energy_j", "amplitude"]);
    let energy = c.number(obj, path, "energy_j");
    let amplitude = match obj.get("amplitude") {
        None => {
            c.error(&join(path, "amplitude"), "missing required key");
            None
        }
        Some(Value::Array(parts)) if parts.len() == 2 => {
            let p = join(path, "amplitude");
            let re = c.number_value(&parts[0], &format!("{p}[0]"));
            let im = c.number_value(&parts[1], &format!("{p}[1]"));
            Some(ComplexValue::new(re?, im?))
        }
        Some(v) if v.is_number() => Some(ComplexValue::new(v.as_f64()?, 0.0)),
        Some(_) => {
            c.error(
                &join(path, "amplitude"),
                "expected a number or a [re, im] pair",
            );
            None
        }
    };
    Some(Level {
        energy: energy?,
        amplitude: amplitude?,
    })
}

fn read_geometry(
    c: &mut Collector,
    v: &Value,
    path: &str,
    phys: &PhysicalConstants,
) -> Option<GeometrySpec> {
    let obj = c.object(v, path)?;
    c.check_keys(obj, path, &GEOMETRY_BLOCKS);
    let present: Vec<&str> = GEOMETRY_BLOCKS
        .iter()
        .copied()
        .filter(|k| obj.contains_key(*k))
        .collect();
    if present.len() != 1 {
        c.error(
            path,
            format!(
                "exactly one geometry block is required ({}), found {}",
                GEOMETRY_BLOCKS.join(", "),
                if present.is_empty() {
                    "none".to_string()
                } else {
                    present.join(" and ")
                }
            ),
        );
        return None;
    }
    let key = present[0];
    let p = join(path, key);
    let block = c.object(&obj[key], &p)?;
    match key {
        "gravitational" => {
            c.check_keys(block, &p, &["gravity_m_per_s2", "height_m", "hold_time_s"]);
            let gravity = c
                .opt_number(block, &p, "gravity_m_per_s2")
                .unwrap_or(phys.g_default);
            Some(GeometrySpec::Gravitational {
                gravity,
                height: c.opt_number(block, &p, "height_m"),
                hold_time: c.opt_number(block, &p, "hold_time_s"),
            })
        }
        "rotating" => {
            c.check_keys(
                block,
                &p,
                &["angular_velocity_rad_per_s", "radius_m", "hold_time_s"],
            );
            Some(GeometrySpec::Rotating {
                angular_velocity: c.opt_number(block, &p, "angular_velocity_rad_per_s"),
                radius: c.opt_number(block, &p, "radius_m"),
                hold_time: c.opt_number(block, &p, "hold_time_s"),
            })
        }
        "photon_delay" => {
            c.check_keys(block, &p, &["delta_tau_s"]);
            Some(GeometrySpec::PhotonDelay {
                delta_tau: c.opt_number(block, &p, "delta_tau_s"),
            })
        }
        _ => {
            c.check_keys(block, &p, &["gravity_m_per_s2", "gamma1", "gamma2"]);
            let gravity = c
                .opt_number(block, &p, "gravity_m_per_s2")
                .unwrap_or(phys.g_default);
            let gamma1 = read_segments(c, block, &p, "gamma1");
            let gamma2 = read_segments(c, block, &p, "gamma2");
            Some(GeometrySpec::Custom {
                gamma1: gamma1?,
                gamma2: gamma2?,
                gravity,
            })
        }
    }
}

fn read_segments(
    c: &mut Collector,
    obj: &Map<String, Value>,
    path: &str,
    key: &str,
) -> Option<Vec<PathSegment>> {
    let items = c.array(obj, path, key)?;
    let mut out = Vec::with_capacity(items.len());
    let mut ok = true;
    for (i, item) in items.iter().enumerate() {
        let p = format!("{path}.{key}[{i}]");
        let Some(seg) = c.object(item, &p) else {
            ok = false;
            continue;
        };
        c.check_keys(seg, &p, &["duration_s", "height_m", "speed_m_per_s"]);
        let d = c.number(seg, &p, "duration_s");
        let h = c.opt_number(seg, &p, "height_m").unwrap_or(0.0);
        let v = c.opt_number(seg, &p, "speed_m_per_s").unwrap_or(0.0);
        match d {
            Some(d) => out.push(PathSegment::new(d, h, v)),
            None => ok = false,
        }
    }
    ok.then_some(out)
}

fn read_sweep(c: &mut Collector, v: &Value, path: &str) -> Option<Sweep> {
    let obj = c.object(v, path)?;
    c.check_keys(
        obj,
        path,
        &["variable", "start", "stop", "count", "spacing"],
    );
    let variable = c.string(obj, path, "variable").and_then(|n| {
        let v = SweepVariable::from_name(n);
        if v.is_none() {
            let names: Vec<&str> = SweepVariable::ALL.iter().map(|v| v.name()).collect();
            c.error(
                &join(path, "variable"),
                format!(
                    "unknown variable `{n}`, expected one of {}",
                    names.join(", ")
                ),
            );
        }
        v
    });
    let start = c.number(obj, path, "start");
    let stop = c.number(obj, path, "stop");
    let count = match obj.get("count") {
        None => {
            c.error(&join(path, "count"), "missing required key");
            None
        }
        Some(v) => match v.as_u64().and_then(|n| usize::try_from(n).ok()) {
            Some(n) => Some(n),
            None => {
                c.error(&join(path, "count"), "expected a non-negative integer");
                None
            }
        },
    };
    let spacing = match obj.get("spacing") {
        None => Some(Spacing::default()),
        Some(Value::String(s)) => {
            let sp = Spacing::from_name(s);
            if sp.is_none() {
                c.error(
                    &join(path, "spacing"),
                    format!("unknown spacing `{s}`, expected `linear` or `log`"),
                );
            }
            sp
        }
        Some(_) => {
            c.error(&join(path, "spacing"), "expected a string");
            None
        }
    };
    Some(Sweep {
        variable: variable?,
        start: start?,
        stop: stop?,
        count: count?,
        spacing: spacing?,
    })
}

/// The document form of a scenario; parsing it back yields an equal scenario.
pub fn scenario_to_document(s: &Scenario) -> Value {
    let clock = match &s.clock {
        ClockModel::State(InternalState::Pure(p)) => json!({
            "type": "pure_discrete",
            "levels": p.levels().iter().map(|l| json!({
                "energy_j": l.energy,
                "amplitude": [l.amplitude.re, l.amplitude.im],
            })).collect::<Vec<_>>(),
        }),
        ClockModel::State(InternalState::Gaussian(g)) => json!({
            "type": "gaussian_photon",
            "center_frequency_rad_per_s": g.nu0,
            "width_s": g.a,
        }),
        ClockModel::State(InternalState::Thermal(t)) => json!({
            "type": "thermal_harmonic",
            "mode_frequencies_rad_per_s": t.mode_frequencies(),
            "temperature_k": t.temperature(),
        }),
        ClockModel::HighTemperature {
            mode_count,
            temperature,
        } => json!({
            "type": "thermal_high_t",
            "mode_count": mode_count,
            "temperature_k": temperature,
        }),
    };
    let mut block = Map::new();
    let mut put = |k: &str, v: Option<f64>| {
        if let Some(x) = v {
            block.insert(k.into(), json!(x));
        }
    };
    let key = match &s.geometry {
        GeometrySpec::Gravitational {
            gravity,
            height,
            hold_time,
        } => {
            put("gravity_m_per_s2", Some(*gravity));
            put("height_m", *height);
            put("hold_time_s", *hold_time);
            "gravitational"
        }
        GeometrySpec::Rotating {
            angular_velocity,
            radius,
            hold_time,
        } => {
            put("angular_velocity_rad_per_s", *angular_velocity);
            put("radius_m", *radius);
            put("hold_time_s", *hold_time);
            "rotating"
        }
        GeometrySpec::PhotonDelay { delta_tau } => {
            put("delta_tau_s", *delta_tau);
            "photon_delay"
        }
        GeometrySpec::Custom {
            gamma1,
            gamma2,
            gravity,
        } => {
            let segs = |g: &[PathSegment]| {
                g.iter()
                    .map(|s| {
                        json!({
                            "duration_s": s.duration,
                            "height_m": s.height,
                            "speed_m_per_s": s.speed,
                        })
                    })
                    .collect::<Vec<_>>()
            };
            block.insert("gravity_m_per_s2".into(), json!(gravity));
            block.insert("gamma1".into(), Value::Array(segs(gamma1)));
            block.insert("gamma2".into(), Value::Array(segs(gamma2)));
            "custom"
        }
    };
    let mut scenario = Map::new();
    if let Some(name) = &s.name {
        scenario.insert("name".into(), json!(name));
    }
    scenario.insert("constants".into(), json!(s.constants.name()));
    scenario.insert("mass_kg".into(), json!(s.mass));
    scenario.insert("clock".into(), clock);
    scenario.insert("geometry".into(), json!({ key: Value::Object(block) }));
    scenario.insert(
        "sweep".into(),
        json!({
            "variable": s.sweep.variable.name(),
            "start": s.sweep.start,
            "stop": s.sweep.stop,
            "count": s.sweep.count,
            "spacing": s.sweep.spacing.name(),
        }),
    );
    json!({ "schema_version": SCHEMA_VERSION, "scenario": Value::Object(scenario) })
}
