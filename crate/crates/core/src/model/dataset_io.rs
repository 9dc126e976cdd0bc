//! Line-delimited dataset files.
//!
//! One transition per line, header required. Two schemas, chosen by the
//! state kind:
//!
//! ```text
//! site,traj,h,a,r,s0,..,s{p-1},s_next0,..,s_next{p-1}   (continuous states)
//! site,traj,h,a,r,s_code,s_next_code                    (finite states)
//! ```
//!
//! Floats are written in shortest round-trip form with a `.` separator, so a
//! write/read cycle reproduces the dataset bit-exactly.

use crate::error::{Error, Result};
use crate::model::data::{OfflineDataset, SiteData, State, Trajectory, Transition};
use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

fn continuous_header(p: usize) -> String {
    let mut cols = vec![
        "site".to_string(),
        "traj".to_string(),
        "h".to_string(),
        "a".to_string(),
        "r".to_string(),
    ];
    cols.extend((0..p).map(|j| format!("s{j}")));
    cols.extend((0..p).map(|j| format!("s_next{j}")));
    cols.join(",")
}

const FINITE_HEADER: &str = "site,traj,h,a,r,s_code,s_next_code";

fn state_dim(dataset: &OfflineDataset) -> Option<usize> {
    dataset
        .sites
        .iter()
        .flat_map(|s| &s.trajectories)
        .flat_map(|t| &t.steps)
        .next()
        .map(|t| match &t.s {
            State::Vector(v) => v.len(),
            State::Code(_) => 0,
        })
}

/// Writes `dataset` to `path`. An empty dataset defaults to the finite-state
/// header.
pub fn save_dataset(dataset: &OfflineDataset, path: &Path) -> Result<()> {
    let mut out = String::new();
    let dim = state_dim(dataset);
    match dim {
        Some(p) if p > 0 => out.push_str(&continuous_header(p)),
        _ => out.push_str(FINITE_HEADER),
    }
    out.push('\n');
    for (site, data) in dataset.sites.iter().enumerate() {
        for (traj, trajectory) in data.trajectories.iter().enumerate() {
            for t in &trajectory.steps {
                out.push_str(&format!("{site},{traj},{},{},{}", t.h, t.a, t.r));
                write_state(&mut out, &t.s);
                write_state(&mut out, &t.s_next);
                out.push('\n');
            }
        }
    }
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(out.as_bytes()).map_err(|e| Error::io(path, e))
}

fn write_state(out: &mut String, s: &State) {
    match s {
        State::Vector(v) => {
            for x in v {
                out.push(',');
                out.push_str(&format!("{x}"));
            }
        }
        State::Code(c) => {
            out.push(',');
            out.push_str(&format!("{c}"));
        }
    }
}

/// Loads a dataset file, reconstructing site/trajectory structure from the
/// record indices (records may appear in any order).
pub fn load_dataset(path: &Path) -> Result<OfflineDataset> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::data(format!("{}: empty file, header required", path.display())))?;
    let schema = parse_header(header, path)?;

    let mut by_key: BTreeMap<(usize, usize), BTreeMap<usize, Transition>> = BTreeMap::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let expected = 5 + 2 * schema.state_cols();
        if fields.len() != expected {
            return Err(Error::data(format!(
                "{} line {}: expected {expected} fields, got {}",
                path.display(),
                lineno + 2,
                fields.len()
            )));
        }
        let ctx = |what: &str| format!("{} line {}: bad {what}", path.display(), lineno + 2);
        let site: usize = fields[0].parse().map_err(|_| Error::data(ctx("site")))?;
        let traj: usize = fields[1].parse().map_err(|_| Error::data(ctx("traj")))?;
        let h: usize = fields[2].parse().map_err(|_| Error::data(ctx("h")))?;
        let a: usize = fields[3].parse().map_err(|_| Error::data(ctx("a")))?;
        let r: f64 = fields[4].parse().map_err(|_| Error::data(ctx("r")))?;
        let (s, s_next) = schema.parse_states(&fields[5..], &ctx)?;
        by_key
            .entry((site, traj))
            .or_default()
            .insert(h, Transition { h, s, a, r, s_next });
    }

    let max_site = by_key.keys().map(|(s, _)| *s).max();
    let mut dataset = OfflineDataset::empty(max_site.map_or(0, |m| m + 1));
    for ((site, traj), steps) in by_key {
        let trajectories = &mut dataset.sites[site].trajectories;
        if trajectories.len() <= traj {
            trajectories.resize(traj + 1, Trajectory::default());
        }
        trajectories[traj] = Trajectory {
            steps: steps.into_values().collect(),
        };
    }
    // drop placeholder sites with genuinely missing indices only if trailing
    for site in &mut dataset.sites {
        site.trajectories.retain(|t| !t.steps.is_empty());
    }
    Ok(dataset)
}

enum Schema {
    Continuous { p: usize },
    Finite,
}

impl Schema {
    fn state_cols(&self) -> usize {
        match self {
            Schema::Continuous { p } => *p,
            Schema::Finite => 1,
        }
    }

    fn parse_states(
        &self,
        fields: &[&str],
        ctx: &dyn Fn(&str) -> String,
    ) -> Result<(State, State)> {
        match self {
            Schema::Continuous { p } => {
                let mut s: SmallVec<[f64; 4]> = SmallVec::with_capacity(*p);
                let mut s_next: SmallVec<[f64; 4]> = SmallVec::with_capacity(*p);
                for j in 0..*p {
                    s.push(fields[j].parse().map_err(|_| Error::data(ctx("state entry")))?);
                    s_next.push(
                        fields[p + j]
                            .parse()
                            .map_err(|_| Error::data(ctx("next-state entry")))?,
                    );
                }
                Ok((State::Vector(s), State::Vector(s_next)))
            }
            Schema::Finite => {
                let s: u32 = fields[0].parse().map_err(|_| Error::data(ctx("s_code")))?;
                let s_next: u32 = fields[1].parse().map_err(|_| Error::data(ctx("s_next_code")))?;
                Ok((State::Code(s), State::Code(s_next)))
            }
        }
    }
}

fn parse_header(header: &str, path: &Path) -> Result<Schema> {
    let cols: Vec<&str> = header.split(',').collect();
    if cols.len() < 7 || cols[..5] != ["site", "traj", "h", "a", "r"] {
        return Err(Error::data(format!(
            "{}: unrecognized header `{header}`",
            path.display()
        )));
    }
    if cols[5] == "s_code" {
        if cols.len() != 7 || cols[6] != "s_next_code" {
            return Err(Error::data(format!(
                "{}: malformed finite-state header",
                path.display()
            )));
        }
        return Ok(Schema::Finite);
    }
    let p = (cols.len() - 5) / 2;
    if cols.len() != 5 + 2 * p || cols[5..5 + p].iter().enumerate().any(|(j, c)| *c != format!("s{j}"))
    {
        return Err(Error::data(format!(
            "{}: malformed continuous-state header",
            path.display()
        )));
    }
    Ok(Schema::Continuous { p })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_continuous() -> OfflineDataset {
        let t = |h: usize, a: usize, r: f64| Transition {
            h,
            s: State::vector(vec![0.25, 0.5]),
            a,
            r,
            s_next: State::vector(vec![0.1, 0.9]),
        };
        OfflineDataset {
            sites: vec![
                SiteData {
                    trajectories: vec![Trajectory {
                        steps: vec![t(1, 0, 0.5), t(2, 3, 1.0)],
                    }],
                },
                SiteData {
                    trajectories: vec![Trajectory {
                        steps: vec![t(1, 1, 0.125), t(2, 2, 0.0)],
                    }],
                },
            ],
        }
    }

    #[test]
    fn round_trips_continuous_dataset() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("data.csv");
        let ds = sample_continuous();
        save_dataset(&ds, &path).unwrap();
        let loaded = load_dataset(&path).unwrap();
        assert_eq!(ds, loaded);
    }

    #[test]
    fn round_trips_finite_dataset() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("data.csv");
        let ds = OfflineDataset {
            sites: vec![SiteData {
                trajectories: vec![Trajectory {
                    steps: vec![Transition {
                        h: 1,
                        s: State::code(0),
                        a: 2,
                        r: 0.0,
                        s_next: State::code(1),
                    }],
                }],
            }],
        };
        save_dataset(&ds, &path).unwrap();
        assert_eq!(load_dataset(&path).unwrap(), ds);
    }

    #[test]
    fn rejects_missing_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("data.csv");
        std::fs::write(&path, "0,0,1,0,0.5,1,2\n").unwrap();
        assert!(load_dataset(&path).is_err());
    }
}
