//! Instance and result files.

use std::fmt;

use highway_hull::{
    format_rational, parse_rational, Axis, HighwayConfig, HullError, HullRun, Point, Rational,
};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetricName {
    L1,
    L2INF,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema_version: u32,
    pub metric: MetricName,
    /// Rational or decimal string, or `"inf"`.
    pub speed: String,
    pub points: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterOut {
    pub hull: Vec<[String; 2]>,
    pub members: Vec<usize>,
    pub on_x: bool,
    pub on_y: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkOut {
    pub axis: String,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsOut {
    pub n: usize,
    pub clusters: usize,
    pub point_drags: usize,
    pub edge_drags: usize,
    pub edges_tested: usize,
    pub edges_formed: usize,
    pub fallbacks: usize,
    pub ray_steps: usize,
    pub completeness_merges: usize,
    pub cascade_merges: usize,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub schema_version: u32,
    pub metric: MetricName,
    pub speed: String,
    pub points: Vec<[String; 2]>,
    pub clusters: Vec<ClusterOut>,
    pub highway_links: Vec<LinkOut>,
    /// `(H_x cluster, H_y cluster)` positions in side order.
    pub marks: Vec<(usize, usize)>,
    pub stats: StatsOut,
}

#[derive(Debug)]
pub enum InputError {
    /// Unreadable or malformed input.
    Parse(String),
    /// Well-formed but outside the model.
    Constraint(String),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Parse(m) => write!(f, "parse error: {m}"),
            InputError::Constraint(m) => write!(f, "invalid instance: {m}"),
        }
    }
}

impl From<HullError> for InputError {
    fn from(e: HullError) -> Self {
        InputError::Constraint(e.to_string())
    }
}

pub fn parse_value(s: &str) -> Result<Rational, InputError> {
    parse_rational(s).ok_or_else(|| InputError::Parse(format!("not a number: {s:?}")))
}

pub fn config(metric: MetricName, speed: &str) -> Result<HighwayConfig<Rational>, InputError> {
    match metric {
        MetricName::L2INF => {
            if speed.trim() != "inf" {
                return Err(InputError::Constraint(
                    "the L2INF metric needs speed \"inf\"".into(),
                ));
            }
            Ok(HighwayConfig::L2Inf)
        }
        MetricName::L1 => {
            if speed.trim() == "inf" {
                return Err(InputError::Constraint(
                    "the L1 metric needs a finite speed".into(),
                ));
            }
            Ok(HighwayConfig::l1(parse_value(speed)?)?)
        }
    }
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let inst: InstanceFile =
            serde_json::from_str(text).map_err(|e| InputError::Parse(e.to_string()))?;
        if inst.schema_version != SCHEMA_VERSION {
            return Err(InputError::Parse(format!(
                "unsupported schema_version {}",
                inst.schema_version
            )));
        }
        Ok(inst)
    }

    pub fn decode(&self) -> Result<(HighwayConfig<Rational>, Vec<Point<Rational>>), InputError> {
        let cfg = config(self.metric, &self.speed)?;
        let mut pts = Vec::with_capacity(self.points.len());
        for [x, y] in &self.points {
            pts.push(Point::in_quadrant(parse_value(x)?, parse_value(y)?)?);
        }
        Ok((cfg, pts))
    }

    pub fn encode(metric: MetricName, speed: &str, points: &[Point<Rational>]) -> Self {
        InstanceFile {
            schema_version: SCHEMA_VERSION,
            metric,
            speed: speed.to_string(),
            points: encode_points(points),
        }
    }
}

pub fn encode_points(points: &[Point<Rational>]) -> Vec<[String; 2]> {
    points
        .iter()
        .map(|p| [format_rational(&p.x), format_rational(&p.y)])
        .collect()
}

impl ResultFile {
    pub fn from_run(inst: &InstanceFile, run: &HullRun<Rational>, elapsed_ms: f64) -> Self {
        let s = &run.stats;
        ResultFile {
            schema_version: SCHEMA_VERSION,
            metric: inst.metric,
            speed: inst.speed.clone(),
            points: inst.points.clone(),
            clusters: run
                .hull
                .clusters
                .iter()
                .map(|c| ClusterOut {
                    hull: encode_points(&c.hull),
                    members: c.members.clone(),
                    on_x: c.on_x,
                    on_y: c.on_y,
                })
                .collect(),
            highway_links: run
                .hull
                .highway_links
                .iter()
                .map(|l| LinkOut {
                    axis: match l.axis {
                        Axis::Hx => "HX".into(),
                        Axis::Hy => "HY".into(),
                    },
                    from: format_rational(&l.from),
                    to: format_rational(&l.to),
                })
                .collect(),
            marks: run.marks.pairs.iter().copied().collect(),
            stats: StatsOut {
                n: s.n,
                clusters: run.hull.clusters.len(),
                point_drags: s.marks.point_drags,
                edge_drags: s.marks.edge_drags,
                edges_tested: s.marks.edges_tested,
                edges_formed: s.edges_formed,
                fallbacks: s.marks.fallbacks,
                ray_steps: s.marks.ray_steps,
                completeness_merges: s.settle.completeness_merges,
                cascade_merges: s.settle.cascade_merges,
                elapsed_ms,
            },
        }
    }

    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let r: ResultFile =
            serde_json::from_str(text).map_err(|e| InputError::Parse(e.to_string()))?;
        if r.schema_version != SCHEMA_VERSION {
            return Err(InputError::Parse(format!(
                "unsupported schema_version {}",
                r.schema_version
            )));
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(metric: MetricName, speed: &str, pts: &[(&str, &str)]) -> InstanceFile {
        InstanceFile {
            schema_version: SCHEMA_VERSION,
            metric,
            speed: speed.into(),
            points: pts
                .iter()
                .map(|(x, y)| [x.to_string(), y.to_string()])
                .collect(),
        }
    }

    #[test]
    fn instance_round_trip() {
        let a = inst(MetricName::L1, "3/2", &[("1/3", "2.5"), ("0", "7")]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(InstanceFile::from_json(&text).unwrap(), a);
        let (_, pts) = a.decode().unwrap();
        assert_eq!(pts[0].x, Rational::new(1.into(), 3.into()));
        assert_eq!(pts[0].y, Rational::new(5.into(), 2.into()));
    }

    #[test]
    fn constraint_errors() {
        assert!(matches!(
            inst(MetricName::L1, "1", &[]).decode(),
            Err(InputError::Constraint(_))
        ));
        assert!(matches!(
            inst(MetricName::L1, "inf", &[]).decode(),
            Err(InputError::Constraint(_))
        ));
        assert!(matches!(
            inst(MetricName::L2INF, "inf", &[("-1", "0")]).decode(),
            Err(InputError::Constraint(_))
        ));
        assert!(matches!(
            inst(MetricName::L2INF, "inf", &[("x", "0")]).decode(),
            Err(InputError::Parse(_))
        ));
    }
}
