use std::fmt;

/// Everything a command prints: what ran, with which seed and tolerances,
/// the result lines and the verdicts.
#[derive(Debug, Default)]
pub struct RunReport {
    pub command: String,
    pub seed: Option<u64>,
    pub tolerances: Vec<(&'static str, f64)>,
    pub lines: Vec<String>,
    pub verdicts: Vec<(String, bool)>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), ..Self::default() }
    }

    pub fn tolerance(&mut self, name: &'static str, value: f64) -> &mut Self {
        self.tolerances.push((name, value));
        self
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn verdict(&mut self, name: impl Into<String>, ok: bool) {
        self.verdicts.push((name.into(), ok));
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|(_, ok)| *ok)
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command: {}", self.command)?;
        if let Some(seed) = self.seed {
            writeln!(f, "seed: {seed}")?;
        }
        if !self.tolerances.is_empty() {
            let tols: Vec<String> = self.tolerances.iter().map(|(k, v)| format!("{k}={v:e}")).collect();
            writeln!(f, "tolerances: {}", tols.join(" "))?;
        }
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        for (name, ok) in &self.verdicts {
            writeln!(f, "{}: {name}", if *ok { "PASS" } else { "FAIL" })?;
        }
        Ok(())
    }
}

/// C `%.15g`: 15 significant digits, trailing zeros dropped, exponent form
/// outside `1e-5 <= |x| < 1e15`.
pub fn fmt_g15(x: f64) -> String {
    const P: i32 = 15;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (P - 1 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
