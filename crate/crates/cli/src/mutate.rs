//! Step-by-step display of a mutation sequence.

use std::io::{self, BufRead, Write};

use gencluster::seed::{GCASeed, IntMatrix, SeedError};
use gencluster::tropical::{vector_sign, CMatrix, TropicalSign};

fn matrix(m: &IntMatrix) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// The seed at time `t` (1-based) together with its C-matrix.
pub fn render_seed(seed: &GCASeed, c: &CMatrix, t: usize) -> String {
    let mut out = String::new();
    out.push_str(&format!("B[{t}] = {}\n", matrix(&seed.b)));
    out.push_str(&format!("C[{t}] = {}\n", matrix(&c.0)));
    for (i, y) in seed.y.iter().enumerate() {
        out.push_str(&format!("y{}[{t}] = {}\n", i + 1, y.display()));
    }
    for (i, z) in seed.z.iter().enumerate() {
        let parts: Vec<String> = z.iter().map(|c| c.display()).collect();
        out.push_str(&format!("z{}[{t}] = ({})\n", i + 1, parts.join(", ")));
    }
    out
}

fn sign_label(c: &CMatrix, k: usize) -> &'static str {
    match vector_sign(&c.column(k)) {
        Some(TropicalSign::Plus) => "+1",
        Some(TropicalSign::Minus) => "-1",
        None => "undefined",
    }
}

/// Mutation state for the `mutate` command.
pub struct Explorer {
    initial: GCASeed,
    seed: GCASeed,
    c: CMatrix,
    t: usize,
}

impl Explorer {
    pub fn new(seed: GCASeed) -> Self {
        let c = CMatrix::identity(seed.rank());
        Explorer {
            initial: seed.clone(),
            seed,
            c,
            t: 1,
        }
    }

    pub fn current(&self) -> String {
        render_seed(&self.seed, &self.c, self.t)
    }

    /// Mutates at `k` (0-based) and describes the step; the state is
    /// unchanged on error.
    pub fn step(&mut self, k: usize) -> Result<String, SeedError> {
        let next = self.seed.mutate(k)?;
        let dk = self.seed.degrees()[k] as i64;
        let line = format!("mu_{} at t = {}: eps = {}\n", k + 1, self.t, sign_label(&self.c, k));
        self.c = self.c.mutate(&self.seed.b, k, dk);
        self.seed = next;
        self.t += 1;
        Ok(line)
    }

    pub fn at_initial(&self) -> bool {
        self.seed.same_as(&self.initial)
    }
}

/// Prints the initial seed and the seed after every step of `ks` (0-based).
pub fn run_steps(seed: GCASeed, ks: &[usize], out: &mut impl Write) -> io::Result<Result<(), SeedError>> {
    let mut ex = Explorer::new(seed);
    write!(out, "{}", ex.current())?;
    for &k in ks {
        match ex.step(k) {
            Ok(line) => write!(out, "{line}{}", ex.current())?,
            Err(e) => return Ok(Err(e)),
        }
    }
    if !ks.is_empty() && ex.at_initial() {
        writeln!(out, "back at the initial seed")?;
    }
    Ok(Ok(()))
}

/// Reads 1-based indices one per line until end of input or `q`.
pub fn interactive(seed: GCASeed, input: impl BufRead, out: &mut impl Write) -> io::Result<()> {
    let n = seed.rank();
    let mut ex = Explorer::new(seed);
    write!(out, "{}", ex.current())?;
    writeln!(out, "enter a direction in 1..={n}, or q to quit")?;
    for line in input.lines() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if text == "q" || text == "quit" {
            break;
        }
        let k = match text.parse::<usize>() {
            Ok(k) if (1..=n).contains(&k) => k - 1,
            _ => {
                writeln!(out, "not a direction in 1..={n}: {text}")?;
                continue;
            }
        };
        match ex.step(k) {
            Ok(step) => write!(out, "{step}{}", ex.current())?,
            Err(e) => writeln!(out, "{e}")?,
        }
        if ex.at_initial() {
            writeln!(out, "back at the initial seed")?;
        }
    }
    Ok(())
}
