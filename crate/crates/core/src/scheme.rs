//! End-to-end coding schemes.
//!
//! An [`Allocation`] fixes how many input pairs each server controls in each
//! clique's box. The boxes are stacked into one [`BigChannel`]: per stream `k`
//! the columns reachable by servers holding `k` form the block-diagonal matrix
//! `M̄_k`. A random decoder `D` with `rank(D·M̄_k) = R` for every `k` then
//! yields precoders `P_k` with `D·M̄_k·P_k = I_R`, so summing what every server
//! feeds into the boxes decodes to `Σ_k data_k`.
//!
//! Within a clique box the `j`-th server (ascending index) owns the left slots
//! `off+1 ..= off+N_{t,j}` and the paired right slots `N_t+off+1 ..= N_t+off+N_{t,j}`,
//! where `off` is the number of slots owned by earlier servers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::capacity::{capacity_lp, feasible};
use crate::error::{Error, Result};
use crate::field::{extend_field, field_construct, ExtensionSpec, FEl, FieldSpec};
use crate::instances::fig1_with;
use crate::limits::{DEFAULT_ENCODER_RETRIES, MAX_FIELD_ORDER, MAX_SCHEME_QUDITS};
use crate::matrix::FMat;
use crate::model::{parse_problem, Problem};
use crate::nsumbox::{build_half_mds_box, NSumBox};
use crate::rational::Rat;

pub const DEFAULT_SEED: u64 = 7;

/// Input pairs `N_{t,s}` per clique and member server (ascending).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Allocation {
    n_ts: Vec<Vec<usize>>,
}

impl Allocation {
    pub fn new(p: &Problem, n_ts: Vec<Vec<usize>>) -> Result<Self> {
        let a = Allocation { n_ts };
        a.check_shape(p)?;
        if a.total() == 0 {
            return Err(Error::InvalidArgument("allocation assigns no qudits".into()));
        }
        if a.total() > MAX_SCHEME_QUDITS {
            return Err(Error::guard("allocation qudits", a.total() as u128, MAX_SCHEME_QUDITS as u128));
        }
        Ok(a)
    }

    /// From a flat list in cost-tuple order.
    pub fn from_flat(p: &Problem, flat: &[usize]) -> Result<Self> {
        if flat.len() != p.gamma() {
            return Err(Error::dims("allocation", format!("{} entries but Γ = {}", flat.len(), p.gamma())));
        }
        let mut it = flat.iter().copied();
        let n_ts = p.cliques().iter().map(|e| it.by_ref().take(e.len()).collect()).collect();
        Self::new(p, n_ts)
    }

    fn check_shape(&self, p: &Problem) -> Result<()> {
        let ok = self.n_ts.len() == p.t() && self.n_ts.iter().zip(p.cliques()).all(|(n, e)| n.len() == e.len());
        if ok {
            Ok(())
        } else {
            Err(Error::dims("allocation", "shape differs from the clique list"))
        }
    }

    pub fn per_server(&self) -> &[Vec<usize>] {
        &self.n_ts
    }

    pub fn flat(&self) -> Vec<usize> {
        self.n_ts.iter().flatten().copied().collect()
    }

    /// `N_t` for every clique.
    pub fn clique_sizes(&self) -> Vec<usize> {
        self.n_ts.iter().map(|n| n.iter().sum()).collect()
    }

    pub fn total(&self) -> usize {
        self.n_ts.iter().flatten().sum()
    }
}

/// `min_k Σ_t min(N_t, 2·Σ_{s∈E(t)∩W(k)} N_{t,s})`: the rank every `M̄_k`
/// reaches when all boxes are half-MDS.
pub fn rank_of_allocation(p: &Problem, a: &Allocation) -> Result<usize> {
    a.check_shape(p)?;
    let sizes = a.clique_sizes();
    Ok(p.streams()
        .iter()
        .map(|w| {
            p.cliques()
                .iter()
                .zip(&a.n_ts)
                .zip(&sizes)
                .map(|((e, n), &nt)| {
                    let inside: usize = e.iter().zip(n).filter(|(s, _)| w.contains(s)).map(|(_, &x)| x).sum();
                    nt.min(2 * inside)
                })
                .sum::<usize>()
        })
        .min()
        .unwrap_or(0))
}

/// Sums decoded per qudit downloaded.
pub fn rate_of_allocation(p: &Problem, a: &Allocation) -> Result<Rat> {
    let total = a.total();
    if total == 0 {
        return Err(Error::InvalidArgument("allocation assigns no qudits".into()));
    }
    Ok(Rat::new(rank_of_allocation(p, a)? as i64, total as i64))
}

/// Scales a feasible cost tuple by the lcm of its denominators.
pub fn allocation_from_lp(p: &Problem, w: &[Rat]) -> Result<Allocation> {
    if !feasible(p, w)? {
        return Err(Error::InvalidArgument("cost tuple is not feasible".into()));
    }
    let lcm = w.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    let flat = w
        .iter()
        .map(|x| {
            let v = x.numer() * (&lcm / x.denom());
            v.to_usize().filter(|&n| n <= MAX_SCHEME_QUDITS).ok_or_else(|| {
                Error::guard("allocation qudits", v.to_u128().unwrap_or(u128::MAX), MAX_SCHEME_QUDITS as u128)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let a = Allocation::from_flat(p, &flat)?;
    let cost: Rat = w.iter().sum();
    if rate_of_allocation(p, &a)? < cost.recip().expect("feasible costs are positive") {
        return Err(Error::Mismatch("integerized allocation falls below the witness rate".into()));
    }
    Ok(a)
}

/// Box columns (1-based) owned by the `j`-th server (0-based) of clique `t` (0-based).
pub fn slot_columns(a: &Allocation, t: usize, j: usize) -> Vec<usize> {
    let n = &a.n_ts[t];
    let nt: usize = n.iter().sum();
    let off: usize = n[..j].iter().sum();
    (off + 1..=off + n[j]).chain(nt + off + 1..=nt + off + n[j]).collect()
}

/// All clique boxes viewed as one channel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigChannel {
    field: FieldSpec,
    boxes: Vec<Option<NSumBox>>,
    access: Vec<Vec<Vec<usize>>>,
    stacked: Vec<FMat>,
}

impl BigChannel {
    /// Wires given boxes (one per clique with `N_t > 0`) to the allocation.
    pub fn assemble(p: &Problem, a: &Allocation, boxes: Vec<Option<NSumBox>>, field: &FieldSpec) -> Result<Self> {
        a.check_shape(p)?;
        if boxes.len() != p.t() {
            return Err(Error::dims("big channel", format!("{} boxes for {} cliques", boxes.len(), p.t())));
        }
        for (t, (b, nt)) in boxes.iter().zip(a.clique_sizes()).enumerate() {
            let n = b.as_ref().map_or(0, NSumBox::n);
            if n != nt {
                return Err(Error::InvalidBox(format!("clique {} needs a {nt}-sum box, got size {n}", t + 1)));
            }
            if let Some(b) = b {
                if b.field() != field {
                    return Err(Error::FieldMismatch { left: b.field().name(), right: field.name() });
                }
            }
        }
        let access: Vec<Vec<Vec<usize>>> = p
            .cliques()
            .iter()
            .enumerate()
            .map(|(t, e)| {
                p.streams()
                    .iter()
                    .map(|w| {
                        let mut cols: Vec<usize> =
                            (0..e.len()).filter(|&j| w.contains(&e[j])).flat_map(|j| slot_columns(a, t, j)).collect();
                        cols.sort_unstable();
                        cols
                    })
                    .collect()
            })
            .collect();
        let n: usize = a.total();
        let stacked = (0..p.k())
            .map(|k| {
                let width = access.iter().map(|row| row[k].len()).sum();
                let mut m = FMat::zeros(field, n, width);
                let (mut r0, mut c0) = (0, 0);
                for (t, b) in boxes.iter().enumerate() {
                    let Some(b) = b else { continue };
                    for (jj, &c) in access[t][k].iter().enumerate() {
                        for i in 0..b.n() {
                            m.put(r0 + i, c0 + jj, b.matrix().at(i, c - 1));
                        }
                    }
                    r0 += b.n();
                    c0 += access[t][k].len();
                }
                m
            })
            .collect();
        Ok(BigChannel { field: field.clone(), boxes, access, stacked })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn boxes(&self) -> &[Option<NSumBox>] {
        &self.boxes
    }

    /// Box columns of clique `t` reachable by stream `k` (both 1-based).
    pub fn access(&self, t: usize, k: usize) -> &[usize] {
        &self.access[t - 1][k - 1]
    }

    /// `M̄_k` for stream `k` (1-based).
    pub fn stacked(&self, k: usize) -> &FMat {
        &self.stacked[k - 1]
    }

    pub fn streams(&self) -> usize {
        self.stacked.len()
    }

    /// Output height `n = Σ_t N_t`.
    pub fn outputs(&self) -> usize {
        self.boxes.iter().flatten().map(NSumBox::n).sum()
    }

    pub fn min_rank(&self) -> usize {
        self.stacked.iter().map(FMat::rank).min().unwrap_or(0)
    }
}

/// Half-MDS boxes over `field` for every clique with `N_t > 0`.
pub fn build_big_channel(p: &Problem, a: &Allocation, field: &FieldSpec) -> Result<BigChannel> {
    let boxes = a
        .clique_sizes()
        .into_iter()
        .map(|nt| if nt == 0 { Ok(None) } else { build_half_mds_box(nt, field).map(Some) })
        .collect::<Result<Vec<_>>>()?;
    BigChannel::assemble(p, a, boxes, field)
}

/// Draws decoders until every `D·M̄_k` has full row rank `r`, then solves for
/// the precoders. Deterministic in `seed`.
pub fn find_encoders(ch: &BigChannel, r: usize, seed: u64, max_retries: u32) -> Result<(Vec<FMat>, FMat)> {
    let f = ch.field();
    if r == 0 {
        let enc = ch.stacked.iter().map(|m| FMat::zeros(f, m.cols(), 0)).collect();
        return Ok((enc, FMat::zeros(f, 0, ch.outputs())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..max_retries {
        let d = FMat::from_fn(f, r, ch.outputs(), |_, _| rng.gen_range(0..f.order()));
        let mut enc = Vec::with_capacity(ch.streams());
        for m in &ch.stacked {
            let dm = d.mat_mul(m)?;
            match dm.right_inverse() {
                Ok(pk) => enc.push(pk),
                Err(Error::RankDeficient { .. }) => continue 'attempt,
                Err(e) => return Err(e),
            }
        }
        return Ok((enc, d));
    }
    Err(Error::EncoderSearch { retries: max_retries })
}

/// A complete linear scheme over `F_q = F_{d^z}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodingScheme {
    problem: Problem,
    extension: ExtensionSpec,
    allocation: Allocation,
    channel: BigChannel,
    encoders: Vec<FMat>,
    decoder: FMat,
    seed: u64,
}

impl CodingScheme {
    /// Checks shapes and fields only; see [`CodingScheme::check`] for the certificate.
    pub fn assemble(
        problem: Problem,
        extension: ExtensionSpec,
        allocation: Allocation,
        boxes: Vec<Option<NSumBox>>,
        encoders: Vec<FMat>,
        decoder: FMat,
        seed: u64,
    ) -> Result<Self> {
        let (p, r) = problem.field();
        if (p, r) != (extension.base().p(), extension.base().r()) {
            return Err(Error::FieldMismatch { left: format!("F{}^{r}", p), right: extension.base().name() });
        }
        let q = extension.big().clone();
        let channel = BigChannel::assemble(&problem, &allocation, boxes, &q)?;
        let rank = decoder.rows();
        if decoder.field() != &q || decoder.cols() != channel.outputs() {
            return Err(Error::dims(
                "decoder",
                format!("{}x{} over {}", decoder.rows(), decoder.cols(), decoder.field()),
            ));
        }
        if encoders.len() != problem.k() {
            return Err(Error::dims("encoders", format!("{} for {} streams", encoders.len(), problem.k())));
        }
        for (k, e) in encoders.iter().enumerate() {
            if e.field() != &q || e.rows() != channel.stacked[k].cols() || e.cols() != rank {
                return Err(Error::dims("encoder", format!("stream {} is {}x{}", k + 1, e.rows(), e.cols())));
            }
        }
        Ok(CodingScheme { problem, extension, allocation, channel, encoders, decoder, seed })
    }

    /// Verifies `D·M̄_k·P_k = I_R` for every stream.
    pub fn check(&self) -> Result<()> {
        let id = FMat::identity(self.field(), self.rank());
        for (k, pk) in self.encoders.iter().enumerate() {
            let prod = self.decoder.mat_mul(&self.channel.stacked[k])?.mat_mul(pk)?;
            if prod != id {
                return Err(Error::SchemeCheck(format!("D·M̄_k·P_k ≠ I for stream {}", k + 1)));
            }
        }
        Ok(())
    }

    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn extension(&self) -> &ExtensionSpec {
        &self.extension
    }

    /// The symbol field `F_q`.
    pub fn field(&self) -> &FieldSpec {
        self.extension.big()
    }

    pub fn allocation(&self) -> &Allocation {
        &self.allocation
    }

    pub fn channel(&self) -> &BigChannel {
        &self.channel
    }

    /// `R`, the number of `F_q` sums per channel use.
    pub fn rank(&self) -> usize {
        self.decoder.rows()
    }

    /// Precoder `P_k` for stream `k` (1-based).
    pub fn encoder(&self, k: usize) -> &FMat {
        &self.encoders[k - 1]
    }

    pub fn encoders(&self) -> &[FMat] {
        &self.encoders
    }

    pub fn decoder(&self) -> &FMat {
        &self.decoder
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `R / Σ N_{t,s}`: each of the `z·Σ N_{t,s}` d-ary qudits carries `1/z` of an `F_q` symbol.
    pub fn rate(&self) -> Rat {
        Rat::new(self.rank() as i64, self.allocation.total() as i64)
    }

    /// `F_d` sums per channel use, `R·z`.
    pub fn batch_size(&self) -> usize {
        self.rank() * self.extension.z() as usize
    }

    /// Replaces the decoder without re-certifying.
    pub fn with_decoder(mut self, d: FMat) -> Result<Self> {
        if (d.rows(), d.cols(), d.field()) != (self.decoder.rows(), self.decoder.cols(), self.decoder.field()) {
            return Err(Error::dims("decoder", "replacement has a different shape"));
        }
        self.decoder = d;
        Ok(self)
    }

    /// Replaces the 1-based `k`-th encoder without re-certifying.
    pub fn with_encoder(mut self, k: usize, p: FMat) -> Result<Self> {
        let old =
            self.encoders.get(k.wrapping_sub(1)).ok_or_else(|| Error::dims("encoder", format!("no stream {k}")))?;
        if (p.rows(), p.cols(), p.field()) != (old.rows(), old.cols(), old.field()) {
            return Err(Error::dims("encoder", "replacement has a different shape"));
        }
        self.encoders[k - 1] = p;
        Ok(self)
    }

    /// Runs every channel use in a batch. `data[k]` is `R × B` over `F_q`;
    /// the result is the `R × B` decoded sum.
    pub fn simulate_batch(&self, data: &[FMat]) -> Result<FMat> {
        if data.len() != self.problem.k() {
            return Err(Error::dims(
                "simulate",
                format!("{} data blocks for {} streams", data.len(), self.problem.k()),
            ));
        }
        let q = self.field();
        let b = data[0].cols();
        if data.iter().any(|x| x.rows() != self.rank() || x.cols() != b || x.field() != q) {
            return Err(Error::dims("simulate", format!("every data block must be {}x{b} over {q}", self.rank())));
        }
        let coded: Vec<FMat> = self.encoders.iter().zip(data).map(|(p, x)| p.mat_mul(x)).collect::<Result<_>>()?;
        let mut next = vec![0usize; coded.len()];
        let mut y = FMat::zeros(q, self.channel.outputs(), b);
        let mut row0 = 0;
        for (t, bx) in self.channel.boxes.iter().enumerate() {
            let Some(bx) = bx else { continue };
            // Each slot receives the sum over streams of that stream's precoded row.
            let mut x = FMat::zeros(q, 2 * bx.n(), b);
            for (k, c) in coded.iter().enumerate() {
                for &col in &self.channel.access[t][k] {
                    for j in 0..b {
                        x.put(col - 1, j, q.add(x.at(col - 1, j), c.at(next[k], j)));
                    }
                    next[k] += 1;
                }
            }
            let yt = bx.eval(&x)?;
            for i in 0..bx.n() {
                for j in 0..b {
                    y.put(row0 + i, j, yt.at(i, j));
                }
            }
            row0 += bx.n();
        }
        self.decoder.mat_mul(&y)
    }

    /// One channel use: `data[k]` holds `R` symbols of `F_q`.
    pub fn simulate(&self, data: &[Vec<u32>]) -> Result<Vec<u32>> {
        let cols = data.iter().map(|d| FMat::from_fn(self.field(), d.len(), 1, |i, _| d[i])).collect::<Vec<_>>();
        if data.iter().flatten().any(|&v| !self.field().contains(v)) {
            return Err(Error::InvalidElement("data symbol outside F_q".into()));
        }
        Ok(self.simulate_batch(&cols)?.data().to_vec())
    }

    /// The same use seen over `F_d`: `data[k]` holds `R·z` base symbols,
    /// grouped `z` at a time into one `F_q` symbol.
    pub fn simulate_fd(&self, data: &[Vec<u32>]) -> Result<Vec<u32>> {
        let z = self.extension.z() as usize;
        let base = self.extension.base();
        if data.iter().any(|d| d.len() != self.batch_size() || d.iter().any(|&v| !base.contains(v))) {
            return Err(Error::dims("simulate", format!("each stream needs {} symbols of {base}", self.batch_size())));
        }
        let lifted: Vec<Vec<u32>> =
            data.iter().map(|d| d.chunks(z).map(|c| self.extension.compose_raw(c)).collect()).collect();
        Ok(self.simulate(&lifted)?.into_iter().flat_map(|s| self.extension.expand_raw(s)).collect())
    }

    pub fn to_text(&self) -> String {
        let ext = &self.extension;
        let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let mut s = String::from("PROBLEM\n");
        s.push_str(&self.problem.render());
        s.push_str("EXTENSION\n");
        s.push_str(&format!("d {}\nz {}\n", ext.base().order(), ext.z()));
        s.push_str(&format!("base-modulus {}\nmodulus {}\n", list(ext.base().modulus()), list(ext.big().modulus())));
        s.push_str(&format!("embed {}\n", ext.big().render_coeffs(ext.embed_image())));
        s.push_str("ALLOCATION\n");
        for (t, n) in self.allocation.n_ts.iter().enumerate() {
            s.push_str(&format!("{}: {}\n", t + 1, n.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")));
        }
        s.push_str("BOXES\n");
        for (t, b) in self.channel.boxes.iter().enumerate() {
            match b {
                Some(b) => s.push_str(&format!("clique {}\n{}", t + 1, b.to_text())),
                None => s.push_str(&format!("clique {} empty\n", t + 1)),
            }
        }
        s.push_str(&format!("ENCODERS\nrank {}\n", self.rank()));
        for (k, e) in self.encoders.iter().enumerate() {
            s.push_str(&format!("stream {}\n{}", k + 1, e.to_text()));
        }
        s.push_str("DECODER\n");
        s.push_str(&self.decoder.to_text());
        s.push_str(&format!("SEED\n{}\n", self.seed));
        s
    }

    /// Parses [`CodingScheme::to_text`] output. The certificate is not checked.
    pub fn from_text(text: &str) -> Result<Self> {
        let sections = split_sections(text)?;
        let [problem, extension, allocation, boxes, encoders, decoder, seed] = &sections;

        let first = problem.first().map_or(1, |l| l.0);
        let problem_text: String = problem.iter().map(|(_, l)| format!("{l}\n")).collect();
        let problem = parse_problem(&problem_text).map_err(|e| match e {
            Error::Parse { line, msg } => Error::Parse { line: line + first - 1, msg },
            e => e,
        })?;

        let ext = parse_extension(extension)?;
        if problem.field() != (ext.base().p(), ext.base().r()) {
            return Err(Error::parse(first, "problem field differs from the extension base"));
        }
        let q = ext.big().clone();

        let mut n_ts = Vec::new();
        for (i, &(line, l)) in allocation.iter().enumerate() {
            let (t, rest) = l.split_once(':').ok_or_else(|| Error::parse(line, "expected `t: n n ...`"))?;
            if t.trim().parse::<usize>().ok() != Some(i + 1) {
                return Err(Error::parse(line, "allocation cliques must be listed in order"));
            }
            let row = rest
                .split_whitespace()
                .map(|v| v.parse::<usize>().map_err(|_| Error::parse(line, format!("bad count {v:?}"))))
                .collect::<Result<Vec<_>>>()?;
            n_ts.push(row);
        }
        let at = allocation.first().map_or(1, |l| l.0);
        let allocation = Allocation::new(&problem, n_ts).map_err(|e| Error::parse(at, e.to_string()))?;

        let mut parsed_boxes = Vec::new();
        let mut i = 0;
        while i < boxes.len() {
            let (line, l) = boxes[i];
            let t = parsed_boxes.len() + 1;
            if l == format!("clique {t} empty") {
                parsed_boxes.push(None);
                i += 1;
            } else if l == format!("clique {t}") {
                let lines: Vec<&str> = boxes[i + 1..].iter().map(|x| x.1).collect();
                let (b, used) = NSumBox::parse_lines(&lines, line + 1)?;
                parsed_boxes.push(Some(b));
                i += 1 + used;
            } else {
                return Err(Error::parse(line, format!("expected `clique {t}`")));
            }
        }

        let (rline, rank_line) = encoders.first().copied().ok_or_else(|| Error::parse(at, "missing `rank R`"))?;
        let rank: usize = rank_line
            .strip_prefix("rank ")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| Error::parse(rline, "expected `rank R`"))?;
        let mut enc = Vec::new();
        let mut i = 1;
        while i < encoders.len() {
            let (line, l) = encoders[i];
            if l != format!("stream {}", enc.len() + 1) {
                return Err(Error::parse(line, format!("expected `stream {}`", enc.len() + 1)));
            }
            let lines: Vec<&str> = encoders[i + 1..].iter().map(|x| x.1).collect();
            let (m, used) = FMat::parse_lines(&lines, line + 1)?;
            enc.push(m);
            i += 1 + used;
        }

        let dl = decoder.first().map_or(1, |l| l.0);
        let lines: Vec<&str> = decoder.iter().map(|x| x.1).collect();
        let (dec, used) = FMat::parse_lines(&lines, dl)?;
        if used != lines.len() {
            return Err(Error::parse(dl + used, "trailing content after decoder"));
        }
        if dec.rows() != rank {
            return Err(Error::parse(rline, "rank differs from the decoder height"));
        }

        let sl = seed.first().map_or(1, |l| l.0);
        let seed = match seed.as_slice() {
            [(_, s)] => s.parse::<u64>().map_err(|_| Error::parse(sl, "bad seed"))?,
            _ => return Err(Error::parse(sl, "SEED holds one integer")),
        };
        if dec.field() != &q {
            return Err(Error::parse(dl, "decoder is not over F_q"));
        }
        CodingScheme::assemble(problem, ext, allocation, parsed_boxes, enc, dec, seed)
    }
}

const SECTIONS: [&str; 7] = ["PROBLEM", "EXTENSION", "ALLOCATION", "BOXES", "ENCODERS", "DECODER", "SEED"];

type Section<'a> = Vec<(usize, &'a str)>;

fn split_sections(text: &str) -> Result<[Section<'_>; 7]> {
    let mut out: [Section<'_>; 7] = Default::default();
    let mut current: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(pos) = SECTIONS.iter().position(|s| *s == line) {
            if current.map_or(0, |c| c + 1) != pos {
                return Err(Error::parse(i + 1, format!("section {line} out of order")));
            }
            current = Some(pos);
        } else {
            let c = current.ok_or_else(|| Error::parse(i + 1, "content before PROBLEM"))?;
            out[c].push((i + 1, line));
        }
    }
    if current != Some(SECTIONS.len() - 1) {
        return Err(Error::parse(text.lines().count(), "missing sections"));
    }
    Ok(out)
}

fn parse_extension(lines: &[(usize, &str)]) -> Result<ExtensionSpec> {
    let first = lines.first().map_or(1, |l| l.0);
    let get = |key: &str| {
        lines
            .iter()
            .find_map(|&(n, l)| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')).map(|r| (n, r.trim())))
            .ok_or_else(|| Error::parse(first, format!("EXTENSION lacks `{key}`")))
    };
    let (dl, d) = get("d")?;
    let (zl, z) = get("z")?;
    let d: u64 = d.parse().map_err(|_| Error::parse(dl, "bad field order"))?;
    let z: u32 = z.parse().map_err(|_| Error::parse(zl, "bad extension degree"))?;
    let base = crate::field::field_of_order(d).map_err(|e| Error::parse(dl, e.to_string()))?;
    let ext = extend_field(&base, z).map_err(|e| Error::parse(zl, e.to_string()))?;
    let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    for (key, want) in [
        ("base-modulus", list(base.modulus())),
        ("modulus", list(ext.big().modulus())),
        ("embed", ext.big().render_coeffs(ext.embed_image())),
    ] {
        let (n, got) = get(key)?;
        if got != want {
            return Err(Error::parse(n, format!("{key} {got} disagrees with the canonical {want}")));
        }
    }
    Ok(ext)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AllocSpec {
    FromLp,
    Given(Allocation),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZSpec {
    Auto,
    Fixed(u32),
}

#[derive(Clone, Debug)]
pub struct SchemeOptions {
    pub alloc: AllocSpec,
    /// Base field `F_d`; defaults to the problem's field.
    pub d: Option<FieldSpec>,
    pub z: ZSpec,
    pub seed: u64,
    pub max_retries: u32,
}

impl Default for SchemeOptions {
    fn default() -> Self {
        SchemeOptions {
            alloc: AllocSpec::FromLp,
            d: None,
            z: ZSpec::Auto,
            seed: DEFAULT_SEED,
            max_retries: DEFAULT_ENCODER_RETRIES,
        }
    }
}

/// Smallest `z` with `d^z ≥ max N_t + 1` and `d^z > 4·K·R`.
pub fn auto_z(d: u64, max_nt: usize, k: usize, r: usize) -> Result<u32> {
    let need = (max_nt as u128 + 1).max(4 * k as u128 * r as u128 + 1);
    let mut q = d as u128;
    let mut z = 1;
    while q < need {
        q *= d as u128;
        z += 1;
    }
    if q > MAX_FIELD_ORDER as u128 {
        return Err(Error::guard("extension field order", q, MAX_FIELD_ORDER as u128));
    }
    Ok(z)
}

/// Allocation, extension, channel and encoders, certified before return.
pub fn build_scheme(p: &Problem, opts: &SchemeOptions) -> Result<CodingScheme> {
    let d = match &opts.d {
        Some(d) => d.clone(),
        None => field_construct(p.field().0 as u64, p.field().1)?,
    };
    let problem = p.clone().with_field(d.p(), d.r())?;
    let allocation = match &opts.alloc {
        AllocSpec::Given(a) => {
            a.check_shape(&problem)?;
            a.clone()
        }
        AllocSpec::FromLp => {
            let cap = capacity_lp(&problem)?;
            let a = allocation_from_lp(&problem, &cap.witness)?;
            let rate = rate_of_allocation(&problem, &a)?;
            if rate != cap.capacity {
                return Err(Error::Mismatch(format!("allocation rate {rate} differs from capacity {}", cap.capacity)));
            }
            a
        }
    };
    let r = rank_of_allocation(&problem, &allocation)?;
    let max_nt = allocation.clique_sizes().into_iter().max().unwrap_or(0);
    let mut z = match opts.z {
        ZSpec::Auto => auto_z(d.order() as u64, max_nt, problem.k(), r)?,
        ZSpec::Fixed(z) => z,
    };
    loop {
        let ext = extend_field(&d, z)?;
        let channel = build_big_channel(&problem, &allocation, ext.big())?;
        let got = channel.min_rank();
        if got != r {
            return Err(Error::Mismatch(format!("channel rank {got} differs from the half-MDS value {r}")));
        }
        match find_encoders(&channel, r, opts.seed, opts.max_retries) {
            Ok((encoders, decoder)) => {
                let scheme =
                    CodingScheme { problem, extension: ext, allocation, channel, encoders, decoder, seed: opts.seed };
                scheme.check()?;
                return Ok(scheme);
            }
            Err(Error::EncoderSearch { .. }) if opts.z == ZSpec::Auto => {
                z *= 2;
                let order = (d.order() as u128).checked_pow(z).unwrap_or(u128::MAX);
                if order > MAX_FIELD_ORDER as u128 {
                    return Err(Error::guard("extension field order", order, MAX_FIELD_ORDER as u128));
                }
            }
            Err(e) => return Err(e),
        }
    }
}

const FIG2_BOX: [[i64; 10]; 5] = [
    [1, 0, 0, 0, 0, 0, 1, 1, 0, 1],
    [0, 1, 0, 0, 0, 1, 0, 0, 0, 1],
    [0, 0, 1, 0, 0, 1, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 0, 1, 1, 1, 0, 1, 0],
];

const FIG2_DECODER: [[i64; 5]; 4] = [[0, 1, 0, 1, 1], [0, 0, 0, 1, 1], [1, 0, 0, 0, 1], [0, 0, 1, 1, 1]];

/// Box columns feeding each stream, in the order the precoders are stated
/// (one server's pair, then the next server's pair).
pub const FIG2_PRECODER_COLUMNS: [[usize; 4]; 4] = [[1, 6, 2, 7], [1, 6, 3, 8], [2, 7, 3, 8], [4, 5, 9, 10]];

/// `det(V_dec · M_cols)` for each stream's column list.
pub fn fig2_determinants(d: &FieldSpec) -> Result<Vec<FEl>> {
    let m = FMat::from_ints(d, &FIG2_BOX)?;
    let v = FMat::from_ints(d, &FIG2_DECODER)?;
    FIG2_PRECODER_COLUMNS.iter().map(|cols| v.mat_mul(&m.select_columns(cols)?)?.det()).collect()
}

/// The hand-built 5-sum scheme for the four-server map: four sums per five
/// qudits with the fixed box, decoder and precoders `(V_dec·M_cols)^(-1)`.
pub fn fig2_reference_scheme(d: &FieldSpec) -> Result<CodingScheme> {
    let problem = fig1_with(vec![vec![1, 2, 3, 4]])?.with_field(d.p(), d.r())?;
    let ext = extend_field(d, 1)?;
    let allocation = Allocation::new(&problem, vec![vec![1, 1, 1, 2]])?;
    let m = FMat::from_ints(d, &FIG2_BOX)?;
    let v = FMat::from_ints(d, &FIG2_DECODER)?;
    let encoders = FIG2_PRECODER_COLUMNS
        .iter()
        .map(|cols| {
            let stated = v.mat_mul(&m.select_columns(cols)?)?.inverse()?;
            // Reorder rows to ascending box columns.
            let mut sorted = cols.to_vec();
            sorted.sort_unstable();
            let order: Vec<usize> =
                sorted.iter().map(|c| cols.iter().position(|x| x == c).expect("same set") + 1).collect();
            stated.select_rows(&order)
        })
        .collect::<Result<Vec<_>>>()?;
    let scheme = CodingScheme::assemble(problem, ext, allocation, vec![Some(NSumBox::new(m)?)], encoders, v, 0)?;
    scheme.check()?;
    Ok(scheme)
}

/// Coefficients on instances 1..=3 that server `s` of clique `t` (0-based
/// position in the list below) sends for stream `k`.
fn two_sum_part(t: usize, s: usize, k: usize) -> [i64; 3] {
    match (t, s, k) {
        (0, 1, 0) => [1, -1, 1],
        (0, 1, 1) => [1, -1, 0],
        (0, 2, 2) => [1, 0, 0],
        (1, 1, 0) => [0, 1, -1],
        (1, 1, 1) => [0, 1, 0],
        (1, 4, 3) => [1, 0, 0],
        (2, 2, 0) => [0, 0, 1],
        (2, 2, 2) => [0, 1, 0],
        (2, 4, 3) => [-1, 1, 0],
        (3, 3, 1) => [0, 0, 1],
        (3, 3, 2) => [0, -1, 1],
        (3, 4, 3) => [1, -1, 1],
        _ => [0, 0, 0],
    }
}

/// Four 2-sum boxes on cliques `{ab,ac}, {ab,d}, {ac,d}, {bc,d}`, each carrying
/// two instances of one pair-server transmission; six sums per eight qudits.
pub fn two_sum_reference_scheme(d: &FieldSpec) -> Result<CodingScheme> {
    let cliques = vec![vec![1, 2], vec![1, 4], vec![2, 4], vec![3, 4]];
    let problem = fig1_with(cliques.clone())?.with_field(d.p(), d.r())?;
    let ext = extend_field(d, 1)?;
    let allocation = Allocation::new(&problem, vec![vec![1, 1]; 4])?;
    let bx = build_half_mds_box(2, d)?;
    let boxes = vec![Some(bx.clone()); 4];
    let channel = BigChannel::assemble(&problem, &allocation, boxes.clone(), d)?;

    let encoders = (0..problem.k())
        .map(|k| {
            let mut rows = Vec::new();
            for (t, e) in cliques.iter().enumerate() {
                for &c in channel.access(t + 1, k + 1) {
                    // Column c is the left (c ≤ 2) or right slot of server e[j].
                    let (j, right) = if c <= 2 { (c - 1, false) } else { (c - 3, true) };
                    let part = two_sum_part(t, e[j], k);
                    let gain = bx.matrix().at(usize::from(right), c - 1);
                    let scale = d.inv(gain)?;
                    let mut row = vec![0u32; 6];
                    for (i, &v) in part.iter().enumerate() {
                        row[i + 3 * usize::from(right)] = d.mul(scale, d.from_int(v));
                    }
                    rows.push(row);
                }
            }
            FMat::from_rows(d, &rows)
        })
        .collect::<Result<Vec<_>>>()?;

    // Instance i sums consecutive pair-server transmissions in the same half.
    let decoder = FMat::from_fn(d, 6, 8, |i, j| {
        let (half, inst) = (i / 3, i % 3);
        u32::from(j == 2 * inst + half || j == 2 * (inst + 1) + half)
    });
    let scheme = CodingScheme::assemble(problem, ext, allocation, boxes, encoders, decoder, 0)?;
    scheme.check()?;
    Ok(scheme)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::capacity_symmetric;
    use crate::instances::{fig1_problem, table1};
    use crate::model::{symmetric_problem, SymmetricParams};
    use proptest::prelude::*;
    use rand::Rng;

    fn f(p: u64, r: u32) -> FieldSpec {
        field_construct(p, r).unwrap()
    }

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn allocation_rates() {
        let p = fig1_problem();
        let a = Allocation::new(&p, vec![vec![1, 1, 1, 2]]).unwrap();
        assert_eq!((a.total(), a.clique_sizes()), (5, vec![5]));
        assert_eq!(rate_of_allocation(&p, &a).unwrap(), r(4, 5));
        let single = Problem::new(1, vec![vec![1]], vec![vec![1]]).unwrap();
        assert_eq!(rate_of_allocation(&single, &Allocation::new(&single, vec![vec![1]]).unwrap()).unwrap(), Rat::one());
        for s in (2..=8).step_by(2) {
            let disjoint = Problem::new(
                s,
                (1..=s).map(|i| vec![i]).collect(),
                (1..=s / 2).map(|i| vec![2 * i - 1, 2 * i]).collect(),
            )
            .unwrap();
            let a = Allocation::from_flat(&disjoint, &vec![1; s]).unwrap();
            assert_eq!(rate_of_allocation(&disjoint, &a).unwrap(), r(2, s as i64));
        }
        assert!(Allocation::new(&p, vec![vec![0, 0, 0, 0]]).is_err());
        assert!(Allocation::new(&p, vec![vec![1, 1]]).is_err());
    }

    #[test]
    fn lp_witness_integerization() {
        let p = fig1_problem();
        let a = allocation_from_lp(&p, &[r(1, 4), r(1, 4), r(1, 4), r(1, 2)]).unwrap();
        assert_eq!(a.flat(), vec![1, 1, 1, 2]);
        assert!(allocation_from_lp(&p, &[r(1, 8), r(1, 8), r(1, 8), r(1, 2)]).is_err());
        let un = p.with_cliques((1..=4).map(|s| vec![s]).collect()).unwrap();
        assert_eq!(allocation_from_lp(&un, &vec![Rat::one(); 4]).unwrap().flat(), vec![1; 4]);
        for row in table1() {
            let prob = row.problem();
            let cap = capacity_lp(&prob).unwrap();
            let a = allocation_from_lp(&prob, &cap.witness).unwrap();
            let lcm = cap.witness.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
            let m = Rat::from_big(num_rational::BigRational::from_integer(lcm));
            assert_eq!(&cap.optimal_cost * &m, r(a.total() as i64, 1));
        }
    }

    #[test]
    fn fig1_channel_columns() {
        let p = fig1_problem();
        let a = Allocation::new(&p, vec![vec![1, 1, 1, 2]]).unwrap();
        let ch = build_big_channel(&p, &a, &f(2, 3)).unwrap();
        assert_eq!(ch.access(1, 4), &[4, 5, 9, 10]);
        assert_eq!(ch.access(1, 1), &[1, 2, 6, 7]);
        let b = ch.boxes()[0].as_ref().unwrap();
        assert_eq!(ch.stacked(4), &b.matrix().select_columns(&[4, 5, 9, 10]).unwrap());
        assert_eq!(slot_columns(&a, 0, 3), vec![4, 5, 9, 10]);
        assert!(matches!(build_big_channel(&p, &a, &f(2, 2)), Err(Error::FieldTooSmall { .. })));

        let two = fig1_with(vec![vec![1, 2], vec![4]]).unwrap();
        let a2 = Allocation::new(&two, vec![vec![1, 1], vec![1]]).unwrap();
        let ch2 = build_big_channel(&two, &a2, &f(2, 1)).unwrap();
        assert!(ch2.access(2, 1).is_empty());
        assert_eq!(ch2.stacked(1).cols(), 4);
    }

    #[test]
    fn encoder_edge_cases() {
        let p = fig1_problem();
        let a = Allocation::new(&p, vec![vec![1, 1, 1, 2]]).unwrap();
        let ch = build_big_channel(&p, &a, &f(2, 3)).unwrap();
        let (enc, dec) = find_encoders(&ch, 0, 1, 4).unwrap();
        assert_eq!((dec.rows(), dec.cols()), (0, 5));
        assert!(enc.iter().all(|e| e.cols() == 0));
        let (enc, dec) = find_encoders(&ch, 4, 1, 64).unwrap();
        for (k, e) in enc.iter().enumerate() {
            assert!(dec.mat_mul(ch.stacked(k + 1)).unwrap().mat_mul(e).unwrap().is_identity());
        }
        assert_eq!(find_encoders(&ch, 5, 1, 8), Err(Error::EncoderSearch { retries: 8 }));

        let one = Problem::new(2, vec![vec![1, 2]], vec![vec![1, 2]]).unwrap();
        let a1 = Allocation::new(&one, vec![vec![1, 1]]).unwrap();
        let ch1 = build_big_channel(&one, &a1, &f(2, 2)).unwrap();
        assert_eq!(ch1.min_rank(), 2);
        assert!(find_encoders(&ch1, 2, 0, 1).is_ok());
    }

    #[test]
    fn build_examples() {
        let s = build_scheme(&fig1_problem(), &SchemeOptions::default()).unwrap();
        assert_eq!(s.rate(), r(4, 5));
        s.check().unwrap();

        let disjoint = Problem::new(2, vec![vec![1], vec![2]], vec![vec![1, 2]]).unwrap();
        let opts = SchemeOptions { d: Some(f(3, 1)), ..Default::default() };
        let s = build_scheme(&disjoint, &opts).unwrap();
        assert_eq!(s.rate(), Rat::one());
        assert_eq!(s.channel().boxes().iter().flatten().count(), 1);
        assert_eq!(s.problem().field(), (3, 1));

        let params = SymmetricParams::new(4, 1, 2).unwrap();
        let s = build_scheme(&symmetric_problem(params).unwrap(), &SchemeOptions::default()).unwrap();
        assert_eq!(s.rate(), r(1, 2));
        assert_eq!(s.rate(), capacity_symmetric(params));

        let fixed = SchemeOptions { z: ZSpec::Fixed(1), ..Default::default() };
        assert!(matches!(build_scheme(&fig1_problem(), &fixed), Err(Error::FieldTooSmall { .. })));
        let given = SchemeOptions {
            alloc: AllocSpec::Given(Allocation::new(&fig1_problem(), vec![vec![1, 1, 1, 2]]).unwrap()),
            ..Default::default()
        };
        assert_eq!(build_scheme(&fig1_problem(), &given).unwrap().rate(), r(4, 5));
    }

    #[test]
    fn auto_z_rule() {
        assert_eq!(auto_z(2, 5, 4, 4).unwrap(), 7);
        assert_eq!(auto_z(3, 2, 1, 1).unwrap(), 2);
        assert_eq!(auto_z(2, 1, 1, 0).unwrap(), 1);
        assert!(matches!(auto_z(2, 1, 1_000, 1_000_000), Err(Error::Guard { .. })));
    }

    #[test]
    fn simulation_decodes_sums() {
        let s = build_scheme(&fig1_problem(), &SchemeOptions::default()).unwrap();
        let (k, rr, q) = (4, s.rank(), s.field().clone());
        assert_eq!(s.simulate(&vec![vec![0; rr]; k]).unwrap(), vec![0; rr]);
        for j in 0..k {
            for i in 0..rr {
                let mut data = vec![vec![0; rr]; k];
                data[j][i] = 1;
                let mut want = vec![0; rr];
                want[i] = 1;
                assert_eq!(s.simulate(&data).unwrap(), want);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let data: Vec<FMat> = (0..k).map(|_| FMat::from_fn(&q, rr, 500, |_, _| rng.gen_range(0..q.order()))).collect();
        let want = data.iter().skip(1).try_fold(data[0].clone(), |acc, x| acc.mat_add(x)).unwrap();
        assert_eq!(s.simulate_batch(&data).unwrap(), want);
        assert!(s.simulate(&vec![vec![0; rr]; 3]).is_err());

        let z = s.extension().z() as usize;
        let fd: Vec<Vec<u32>> = (0..k).map(|_| (0..rr * z).map(|_| rng.gen_range(0..2)).collect()).collect();
        let want: Vec<u32> = (0..rr * z).map(|i| fd.iter().fold(0, |a, d| a ^ d[i])).collect();
        assert_eq!(s.simulate_fd(&fd).unwrap(), want);
    }

    #[test]
    fn text_round_trip_and_corruption() {
        let s = build_scheme(&fig1_problem(), &SchemeOptions::default()).unwrap();
        let t = s.to_text();
        let back = CodingScheme::from_text(&t).unwrap();
        assert_eq!(back, s);
        back.check().unwrap();
        assert_eq!(back.to_text(), t);

        let mut lines: Vec<String> = t.lines().map(String::from).collect();
        let at = lines.iter().position(|l| l == "DECODER").unwrap() + 2;
        let mut toks: Vec<String> = lines[at].split_whitespace().map(String::from).collect();
        let z = s.extension().z() as usize;
        let zero = format!("[{}]", vec!["0"; z].join(","));
        toks[0] = if toks[0] == zero { format!("[1{}]", ",0".repeat(z - 1)) } else { zero };
        lines[at] = toks.join(" ");
        let bad = CodingScheme::from_text(&lines.join("\n")).unwrap();
        assert!(matches!(bad.check(), Err(Error::SchemeCheck(_))));

        assert!(matches!(CodingScheme::from_text("EXTENSION\nd 2\n"), Err(Error::Parse { .. })));
        let swapped = t.replace("embed ", "embed-x ");
        assert!(CodingScheme::from_text(&swapped).is_err());

        let two = two_sum_reference_scheme(&f(3, 1)).unwrap();
        assert_eq!(CodingScheme::from_text(&two.to_text()).unwrap(), two);
    }

    #[test]
    fn fig2_reference() {
        let f2 = f(2, 1);
        let s = fig2_reference_scheme(&f2).unwrap();
        assert_eq!(s.rate(), r(4, 5));
        assert_eq!((s.rank(), s.allocation().total()), (4, 5));
        let f5 = f(5, 1);
        let dets: Vec<u32> = fig2_determinants(&f5).unwrap().iter().map(FEl::value).collect();
        assert_eq!(dets, vec![1, 4, 1, 4]);
        for d in [f(3, 1), f(2, 2), f5] {
            let s = fig2_reference_scheme(&d).unwrap();
            for (k, cols) in FIG2_PRECODER_COLUMNS.iter().enumerate() {
                let mut sorted = cols.to_vec();
                sorted.sort_unstable();
                let direct = s
                    .decoder()
                    .mat_mul(&s.channel().boxes()[0].as_ref().unwrap().matrix().select_columns(&sorted).unwrap());
                assert_eq!(s.encoder(k + 1), &direct.unwrap().inverse().unwrap());
            }
        }
        for x in 0u32..1 << 16 {
            let data: Vec<Vec<u32>> = (0..4).map(|k| (0..4).map(|i| x >> (4 * k + i) & 1).collect()).collect();
            let want: Vec<u32> = (0..4).map(|i| data.iter().fold(0, |a, d| a ^ d[i])).collect();
            assert_eq!(s.simulate(&data).unwrap(), want);
        }
    }

    #[test]
    fn two_sum_reference() {
        for d in [f(2, 1), f(3, 1), f(2, 2), f(7, 1)] {
            let s = two_sum_reference_scheme(&d).unwrap();
            assert_eq!(s.rate(), r(3, 4));
            assert_eq!((s.rank(), s.allocation().total()), (6, 8));
            assert_eq!(capacity_lp(s.problem()).unwrap().capacity, r(3, 4));
        }
        let f3 = f(3, 1);
        let s = two_sum_reference_scheme(&f3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let data: Vec<Vec<u32>> = (0..4).map(|_| (0..6).map(|_| rng.gen_range(0..3)).collect()).collect();
            let want: Vec<u32> = (0..6).map(|i| data.iter().fold(0, |a, v| (a + v[i]) % 3)).collect();
            assert_eq!(s.simulate(&data).unwrap(), want);
        }
    }

    #[test]
    fn table1_schemes_reach_capacity() {
        for row in table1() {
            let s = build_scheme(&row.problem(), &SchemeOptions::default()).unwrap();
            assert_eq!(s.rate(), row.capacity, "{}", row.label());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn channel_rank_matches_formula(p in crate::model::tests::arb_problem(4), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut flat: Vec<usize> = (0..p.gamma()).map(|_| rng.gen_range(0..3)).collect();
            flat[0] += 1;
            let a = Allocation::from_flat(&p, &flat).unwrap();
            let max_nt = a.clique_sizes().into_iter().max().unwrap();
            let field = (1..=20).map(|r| f(2, r)).find(|fl| fl.order() as usize >= max_nt).unwrap();
            let ch = build_big_channel(&p, &a, &field).unwrap();
            let want = rank_of_allocation(&p, &a).unwrap();
            prop_assert_eq!(ch.min_rank(), want);
            for k in 1..=p.k() {
                let cols: usize = (1..=p.t()).map(|t| ch.access(t, k).len()).sum();
                prop_assert_eq!(ch.stacked(k).cols(), cols);
            }
        }
    }
}
