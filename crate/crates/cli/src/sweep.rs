use std::fmt;
use std::str::FromStr;

/// `[name=]start:stop:count[:lin|log]`
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub name: Option<String>,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log: bool,
}

impl Sweep {
    pub fn points(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let s = i as f64 / last;
                if i == self.count - 1 {
                    self.stop
                } else if self.log {
                    (self.start.ln() + s * (self.stop.ln() - self.start.ln())).exp()
                } else {
                    self.start + s * (self.stop - self.start)
                }
            })
            .collect()
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (name, range) = match s.split_once('=') {
            Some((n, r)) if !n.is_empty() => (Some(n.to_string()), r),
            Some(_) => return Err(format!("empty sweep name in '{s}'")),
            None => (None, s),
        };
        let parts: Vec<&str> = range.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(format!("expected start:stop:count[:log], got '{range}'"));
        }
        let num = |t: &str| {
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("'{t}' is not a finite number"))
        };
        let start = num(parts[0])?;
        let stop = num(parts[1])?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| format!("'{}' is not a count", parts[2]))?;
        if count < 2 {
            return Err(format!("sweep count must be at least 2, got {count}"));
        }
        let log = match parts.get(3) {
            None | Some(&"lin") => false,
            Some(&"log") => true,
            Some(other) => return Err(format!("unknown spacing '{other}' (lin or log)")),
        };
        if log && !(start > 0.0 && stop > 0.0) {
            return Err("log sweeps need positive endpoints".into());
        }
        Ok(Sweep {
            name,
            start,
            stop,
            count,
            log,
        })
    }
}

/// The range only; callers label it.
impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spacing = if self.log { "log" } else { "lin" };
        write!(f, "{}:{}:{}:{spacing}", self.start, self.stop, self.count)
    }
}
