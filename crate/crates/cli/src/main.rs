//! `kummer`: L-polynomials, point counts and class numbers of
//! `F_q(T, (T^2 + aT + b)^(1/l))` from the command line.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use serde_json::{json, Map, Value};

use kummer_lpoly::cyclo::{identity_report, CheckStatus};
use kummer_lpoly::frobenius::{analyze, CurveParams, FrobeniusData, TraceProfile};
use kummer_lpoly::gf::FieldSpec;
use kummer_lpoly::lfunc::{closed_form, lpoly_from_profile, LPoly};
use kummer_lpoly::numth::multiplicative_order;
use kummer_lpoly::oracle::{count_points_naive, OracleBudget};
use kummer_lpoly::parse::{parse_field_order, parse_t_range, ElemSpec};
use kummer_lpoly::stats::{average_class_number, closed_form_average, rational_json, rational_string, Split};

#[derive(Debug, Parser)]
#[command(name = "kummer", version, about = "L-polynomials of y^l = x^2 + ax + b over F_q via Jacobi sums")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// L-polynomial coefficients and class number of one curve.
    Lpoly(Opts),
    /// Class number of one curve.
    Classnum(Opts),
    /// Point counts N_t for t in --t (default 1..2g).
    Points(Opts),
    /// Frobenius traces a(q^t) for t in --t (default 1..2g).
    Trace(Opts),
    /// The Jacobi sum J(chi, rho) over F_{q^m} and its identity checks.
    Jacobi(Opts),
    /// Closed-form L-polynomial (m even, or m = (l-1)/2 odd with --split).
    ClosedForm(Opts),
    /// Average class number over all curves, or one squareness split.
    Average(Opts),
    /// Formula point counts against brute-force enumeration.
    Verify(Opts),
}

#[derive(Debug, Clone, Args)]
#[command(args_override_self = true)]
struct Opts {
    /// Odd prime l.
    #[arg(long)]
    ell: Option<u64>,
    /// Field size: `p` or `p^e`.
    #[arg(long)]
    q: Option<String>,
    /// Coefficient a: residue, `g^k`, or `[c0,c1,...]`.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Coefficient b: residue, `g^k`, or `[c0,c1,...]`.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Monic modulus of F_q over F_p, lowest degree first: `[2,4,1]`.
    #[arg(long)]
    modulus: Option<String>,
    /// Element of F_{q^m} with chi(base) = z.
    #[arg(long)]
    char_base: Option<String>,
    /// `t` or an inclusive range `A..B`.
    #[arg(long)]
    t: Option<String>,
    /// all, square or non-square.
    #[arg(long)]
    split: Option<String>,
    /// Largest field the oracle may enumerate.
    #[arg(long)]
    max_elements: Option<u64>,
    /// Largest number of tuples the oracle may visit.
    #[arg(long)]
    max_pairs: Option<u64>,
    /// Emit one JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// JSON object of flag values; explicit flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] kummer_lpoly::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use kummer_lpoly::Error as E;
        match self {
            CliError::Domain(E::BudgetExceeded(_) | E::FieldTooLarge(_)) => 2,
            CliError::Domain(_) | CliError::Usage(_) => 1,
            CliError::Mismatch(_) => 3,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

impl Opts {
    fn ell(&self) -> Result<u64> {
        self.ell.ok_or_else(|| CliError::Usage("--ell is required".into()))
    }

    fn base_field(&self) -> Result<Arc<FieldSpec>> {
        let q = self.q.as_deref().ok_or_else(|| CliError::Usage("--q is required".into()))?;
        let (p, e) = parse_field_order(q)?;
        let modulus = self.modulus.as_deref().map(parse_modulus).transpose()?;
        Ok(FieldSpec::new(p, e, modulus.as_deref())?)
    }

    fn curve(&self) -> Result<CurveParams> {
        let base = self.base_field()?;
        let elem = |v: &Option<String>, name: &str| -> Result<_> {
            let s = v.as_deref().ok_or_else(|| CliError::Usage(format!("--{name} is required")))?;
            Ok(s.parse::<ElemSpec>()?.resolve(&base)?)
        };
        let (a, b) = (elem(&self.a, "a")?, elem(&self.b, "b")?);
        Ok(CurveParams::new(self.ell()?, base, a, b)?)
    }

    fn char_base(&self) -> Result<Option<ElemSpec>> {
        Ok(self.char_base.as_deref().map(str::parse).transpose()?)
    }

    fn split(&self) -> Result<Option<Split>> {
        Ok(self.split.as_deref().map(str::parse).transpose()?)
    }

    fn t_values(&self, genus: u64) -> Result<Vec<u64>> {
        match self.t.as_deref() {
            Some(t) => Ok(parse_t_range(t)?),
            None => Ok((1..=(2 * genus).max(1)).collect()),
        }
    }

    fn budget(&self) -> Result<OracleBudget> {
        let d = OracleBudget::default();
        Ok(OracleBudget::new(
            self.max_elements.unwrap_or(d.max_elements),
            self.max_pairs.unwrap_or(d.max_pairs),
        )?)
    }
}

fn parse_modulus(s: &str) -> Result<Vec<u64>> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(',')
        .map(|c| c.trim().parse::<u64>().map_err(|_| CliError::Usage(format!("cannot parse modulus '{s}'"))))
        .collect()
}

/// The profile of a curve, or `None` for genus 0.
fn profile(o: &Opts, curve: &CurveParams) -> Result<Option<TraceProfile>> {
    if curve.genus == 0 {
        return Ok(None);
    }
    Ok(Some(analyze(curve, o.char_base()?.as_ref())?))
}

fn lpoly_of(o: &Opts, curve: &CurveParams) -> Result<(Option<TraceProfile>, LPoly)> {
    let p = profile(o, curve)?;
    let l = match &p {
        Some(p) => lpoly_from_profile(p, curve)?,
        None => LPoly::trivial(curve.q()),
    };
    Ok((p, l))
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
}

fn emit(o: &Opts, doc: Value, text: Vec<String>) {
    if o.json {
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        for line in text {
            println!("{line}");
        }
    }
}

fn curve_lines(curve: &CurveParams, p: Option<&TraceProfile>) -> Vec<String> {
    let mut out = vec![format!("genus: {}", curve.genus)];
    if let Some(p) = p {
        out.push(format!("m: {}", p.m));
        out.push(format!("n: {}", p.n));
        out.push(format!("kappa: {}", if p.kappa_square { "square" } else { "non-square" }));
    }
    out
}

fn curve_json(curve: &CurveParams, p: Option<&TraceProfile>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("ell".into(), json!(curve.ell));
    m.insert("q".into(), json!(curve.q()));
    m.insert("genus".into(), json!(curve.genus));
    if let Some(p) = p {
        m.insert("m".into(), json!(p.m));
        m.insert("n".into(), json!(p.n));
        m.insert("kappa_square".into(), json!(p.kappa_square));
    }
    m
}

fn cmd_lpoly(o: &Opts) -> Result<()> {
    let curve = o.curve()?;
    let (p, l) = lpoly_of(o, &curve)?;
    let mut doc = curve_json(&curve, p.as_ref());
    doc.insert("lpoly".into(), l.to_json());
    let mut text = curve_lines(&curve, p.as_ref());
    text.push(format!("L(u) = {l}"));
    text.push(format!("c: {}", join(&l.coeffs)));
    text.push(format!("h: {}", l.class_number));
    emit(o, Value::Object(doc), text);
    Ok(())
}

fn cmd_classnum(o: &Opts) -> Result<()> {
    let curve = o.curve()?;
    let (_, l) = lpoly_of(o, &curve)?;
    emit(o, json!({ "class_number": l.class_number.to_string() }), vec![format!("h: {}", l.class_number)]);
    Ok(())
}

/// `a(q^t)` for each requested `t`; genus 0 has `a = 0`.
fn traces(o: &Opts) -> Result<(CurveParams, Vec<(u64, BigInt)>)> {
    let curve = o.curve()?;
    let p = profile(o, &curve)?;
    let ts = o.t_values(curve.genus)?;
    let rows = ts
        .into_iter()
        .map(|t| Ok((t, p.as_ref().map_or(Ok(BigInt::zero()), |p| p.trace(t))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok((curve, rows))
}

fn cmd_points(o: &Opts) -> Result<()> {
    let (curve, rows) = traces(o)?;
    let q = BigInt::from(curve.q());
    let counts: Vec<(u64, BigInt)> = rows.into_iter().map(|(t, a)| (t, q.clone().pow(t) + 1u32 - a)).collect();
    let doc = json!({
        "q": curve.q(),
        "points": counts.iter().map(|(t, n)| json!({ "t": t, "count": n.to_string() })).collect::<Vec<_>>(),
    });
    emit(o, doc, counts.iter().map(|(t, n)| format!("N_{t} = {n}")).collect());
    Ok(())
}

fn cmd_trace(o: &Opts) -> Result<()> {
    let (curve, rows) = traces(o)?;
    let q = curve.q();
    let doc = json!({
        "q": q,
        "traces": rows.iter().map(|(t, a)| json!({ "t": t, "trace": a.to_string() })).collect::<Vec<_>>(),
    });
    emit(o, doc, rows.iter().map(|(t, a)| format!("a({q}^{t}) = {a}")).collect());
    Ok(())
}

fn cmd_jacobi(o: &Opts) -> Result<()> {
    let ell = o.ell()?;
    let base = o.base_field()?;
    let data = FrobeniusData::new(base.clone(), ell, o.char_base()?.as_ref())?;
    let q = base.order();
    let Some(j) = data.jacobi()? else {
        let half = BigInt::from(q).pow((data.m() / 2) as u32);
        let text = vec![
            format!("m: {} (even)", data.m()),
            format!("J = {half} or -{half}: real, and not needed by the even-m formulas"),
        ];
        emit(o, json!({ "ell": ell, "q": q, "m": data.m(), "jacobi": null }), text);
        return Ok(());
    };
    let order = data.extension_field().expect("odd m").order();
    let report = identity_report(&j, order, ell);
    let status = |s: CheckStatus| match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Skipped => "skipped",
    };
    let mut text = vec![format!("m: {}", data.m()), format!("field order: {order}"), format!("J = {j}")];
    for c in &report.checks {
        text.push(format!("{}: {} ({})", c.name, status(c.status), c.detail));
    }
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "status": status(c.status), "detail": c.detail }))
        .collect();
    let doc = json!({ "ell": ell, "q": q, "m": data.m(), "field_order": order, "jacobi": j.to_json(), "checks": checks });
    emit(o, doc, text);
    if !report.all_passed() {
        return Err(CliError::Mismatch("a Jacobi-sum identity failed".into()));
    }
    Ok(())
}

fn cmd_closed_form(o: &Opts) -> Result<()> {
    let ell = o.ell()?;
    let base = o.base_field()?;
    let square = match o.split()? {
        None | Some(Split::All) => None,
        Some(s) => Some(s == Split::Square),
    };
    let l = closed_form(ell, base.order(), square)?;
    let m = multiplicative_order(base.order() % ell, ell).expect("ell does not divide q");
    let digits = l.class_number.to_string().trim_start_matches('-').len();
    let doc = json!({ "ell": ell, "q": base.order(), "m": m, "lpoly": l.to_json(), "digits": digits });
    let rendered = l.to_string();
    let mut text = vec![format!("m: {m}")];
    if rendered.len() <= 160 {
        text.push(format!("L(u) = {rendered}"));
    } else {
        text.push(format!("L(u): degree {}, {} nonzero terms (see --json)", l.coeffs.len() - 1, l.coeffs.iter().filter(|c| !c.is_zero()).count()));
    }
    text.push(format!("h: {}", l.class_number));
    text.push(format!("digits: {digits}"));
    emit(o, doc, text);
    Ok(())
}

fn cmd_average(o: &Opts) -> Result<()> {
    let ell = o.ell()?;
    let base = o.base_field()?;
    let split = o.split()?.unwrap_or(Split::All);
    let report = average_class_number(ell, &base, split, o.char_base()?.as_ref())?;
    let closed = match closed_form_average(ell, &base, split) {
        Ok(v) => Some(v),
        Err(kummer_lpoly::Error::UnsupportedEll(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let mut text = vec![format!("family size: {}", report.family_size)];
    for r in &report.class_table {
        text.push(format!(
            "n = {:>2}, {:<10} x{:<6} h = {}",
            r.n,
            if r.kappa_square { "square" } else { "non-square" },
            r.multiplicity,
            r.lpoly.class_number
        ));
    }
    text.push(format!("average ({split}): {}", rational_string(&report.average)));
    let mut doc = report.to_json();
    if let Some(c) = &closed {
        text.push(format!("closed form: {}", rational_string(c)));
        doc["closed_form"] = rational_json(c);
    }
    emit(o, doc, text);
    if closed.is_some_and(|c| c != report.average) {
        return Err(CliError::Mismatch("closed-form average disagrees with enumeration".into()));
    }
    Ok(())
}

fn cmd_verify(o: &Opts) -> Result<()> {
    let curve = o.curve()?;
    let budget = o.budget()?;
    let (_, rows) = traces(o)?;
    let q = BigInt::from(curve.q());
    let mut text = Vec::new();
    let mut json_rows = Vec::new();
    let mut bad = Vec::new();
    for (t, a) in rows {
        let formula: BigInt = q.clone().pow(t) + 1u32 - a;
        let oracle = count_points_naive(&curve, t, &budget)?;
        let ok = formula == oracle;
        if !ok {
            bad.push(t);
        }
        text.push(format!("t = {t}: formula {formula}, oracle {oracle}, {}", if ok { "ok" } else { "MISMATCH" }));
        json_rows.push(json!({ "t": t, "formula": formula.to_string(), "oracle": oracle.to_string(), "ok": ok }));
    }
    emit(o, json!({ "q": curve.q(), "rows": json_rows, "ok": bad.is_empty() }), text);
    if !bad.is_empty() {
        return Err(CliError::Mismatch(format!("point counts disagree at t = {bad:?}")));
    }
    Ok(())
}

/// Splices `--config` values in front of the explicit flags.
fn with_config(args: Vec<String>, opts: &Opts) -> Result<Vec<String>> {
    let Some(path) = &opts.config else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{} is not valid JSON: {e}", path.display())))?;
    let Value::Object(map) = doc else {
        return Err(CliError::Usage("config must be a JSON object".into()));
    };
    let mut flags = Vec::new();
    for (key, value) in map {
        let flag = format!("--{}", key.replace('_', "-"));
        match value {
            Value::Bool(true) => flags.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::String(s) => flags.extend([flag, s]),
            Value::Number(n) => flags.extend([flag, n.to_string()]),
            Value::Array(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                flags.extend([flag, format!("[{}]", parts.join(","))]);
            }
            Value::Object(_) => return Err(CliError::Usage(format!("config key '{key}' has an object value"))),
        }
    }
    let mut out = args[..2].to_vec();
    out.extend(flags);
    out.extend(args[2..].iter().cloned());
    Ok(out)
}

fn opts(cmd: &Command) -> &Opts {
    match cmd {
        Command::Lpoly(o)
        | Command::Classnum(o)
        | Command::Points(o)
        | Command::Trace(o)
        | Command::Jacobi(o)
        | Command::ClosedForm(o)
        | Command::Average(o)
        | Command::Verify(o) => o,
    }
}

fn parse(args: &[String]) -> std::result::Result<Cli, ExitCode> {
    Cli::try_parse_from(args).map_err(|e| {
        let code = if e.use_stderr() { 1 } else { 0 };
        let _ = e.print();
        ExitCode::from(code)
    })
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Lpoly(o) => cmd_lpoly(o),
        Command::Classnum(o) => cmd_classnum(o),
        Command::Points(o) => cmd_points(o),
        Command::Trace(o) => cmd_trace(o),
        Command::Jacobi(o) => cmd_jacobi(o),
        Command::ClosedForm(o) => cmd_closed_form(o),
        Command::Average(o) => cmd_average(o),
        Command::Verify(o) => cmd_verify(o),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match parse(&args) {
        Ok(cli) => cli,
        Err(code) => return code,
    };
    let cli = match with_config(args, opts(&cli.command)) {
        Ok(full) => match parse(&full) {
            Ok(cli) => cli,
            Err(code) => return code,
        },
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
