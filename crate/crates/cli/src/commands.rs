use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use qbcap_core::battery::{self, mean_energy};
use qbcap_core::sweep::{format_number, rows_to_json, write_csv, Family, Figure, Grid, SweepSpec};
use qbcap_core::{
    capacity_gain, ergotropy, extremal_energies, haar_unitary, is_entangled,
    qubit_pair_hamiltonian, subsystem_a_hamiltonian, CapacityGainReport, DensityMatrix,
    MeasurementBasis, QubitPairEnergies, XStateParams,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::{
    CapacityArgs, FamilyArg, FigureArg, Format, MeasureArgs, OutputArgs, SweepArgs,
};
use crate::error::{CliError, CliResult};
use crate::input;

fn num(x: f64) -> Value {
    serde_json::from_str(&format_number(x)).unwrap_or(Value::Null)
}

fn nums(xs: &[f64]) -> Value {
    xs.iter().map(|&x| num(x)).collect()
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|&x| format_number(x)).collect::<Vec<_>>().join(" ")
}

/// Writes `body` to `--out` or stdout.
fn emit(out: &OutputArgs, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> CliResult<()> {
    match &out.out {
        Some(path) => {
            let io_err = |source| CliError::Io { path: path.clone(), source };
            let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
            body(&mut w).and_then(|_| w.flush()).map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w).and_then(|_| w.flush()).map_err(|source| CliError::Io {
                path: Path::new("<stdout>").to_path_buf(),
                source,
            })
        }
    }
}

fn write_key_values(w: &mut dyn Write, pairs: &[(&str, String)], format: Format) -> io::Result<()> {
    match format {
        Format::Csv => {
            let keys: Vec<&str> = pairs.iter().map(|(k, _)| *k).collect();
            writeln!(w, "{}", keys.join(","))?;
            let values: Vec<String> = pairs
                .iter()
                .map(|(_, v)| if v.contains([',', '"', ' ']) { format!("\"{}\"", v.replace('"', "\"\"")) } else { v.clone() })
                .collect();
            writeln!(w, "{}", values.join(","))
        }
        _ => {
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in pairs {
                writeln!(w, "{k:<width$}  {v}")?;
            }
            Ok(())
        }
    }
}

pub fn capacity(args: CapacityArgs) -> CliResult<()> {
    let input::LabelledState { label, state } = input::state(&args.state)?;
    let energies = input::energies(&args.energies)?;
    if !state.is_two_qubit() {
        return Err(qbcap_core::Error::InvalidArgument(
            "the qubit-pair Hamiltonian needs a two-qubit state".into(),
        )
        .into());
    }
    let h_ab = qubit_pair_hamiltonian(energies);
    let h_a = subsystem_a_hamiltonian(energies);

    let c_total = battery::capacity(&state, &h_ab)?.value();
    let c_a = battery::capacity(&state.reduced_a()?, &h_a)?.value();
    let energy = mean_energy(&state, &h_ab)?;
    let window = extremal_energies(&state, &h_ab)?;
    let erg = ergotropy(&state, &h_ab)?.value();
    let entangled = is_entangled(&state)?;
    let sampled = if args.oracle_samples > 0 {
        Some(sample_energy_range(&state, &h_ab, args.oracle_samples, args.seed))
    } else {
        None
    };

    let format = args.output.format.unwrap_or(Format::Text);
    if format == Format::Json {
        let mut report = json!({
            "state": label,
            "eps_a": num(energies.eps_a()),
            "eps_b": num(energies.eps_b()),
            "spectrum": nums(state.spectrum()),
            "capacity_total": num(c_total),
            "capacity_a": num(c_a),
            "energy": num(energy),
            "energy_min": num(window.min),
            "energy_max": num(window.max),
            "ergotropy": num(erg),
            "entangled": entangled,
        });
        if let Some((lo, hi)) = sampled {
            report["sampled_energy_min"] = num(lo);
            report["sampled_energy_max"] = num(hi);
        }
        return emit(&args.output, |w| {
            serde_json::to_writer_pretty(&mut *w, &report)?;
            writeln!(w)
        });
    }

    let mut pairs = vec![
        ("state", label),
        ("spectrum", join(state.spectrum())),
        ("capacity_total", format_number(c_total)),
        ("capacity_a", format_number(c_a)),
        ("energy", format_number(energy)),
        ("energy_min", format_number(window.min)),
        ("energy_max", format_number(window.max)),
        ("ergotropy", format_number(erg)),
        ("entangled", entangled.to_string()),
    ];
    if let Some((lo, hi)) = sampled {
        pairs.push(("sampled_energy_min", format_number(lo)));
        pairs.push(("sampled_energy_max", format_number(hi)));
    }
    emit(&args.output, |w| write_key_values(w, &pairs, format))
}

/// Energy range seen over `n` Haar-random unitary orbits of `rho`.
fn sample_energy_range(
    rho: &DensityMatrix,
    h: &qbcap_core::Hamiltonian,
    n: usize,
    seed: u64,
) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..n {
        let u = haar_unitary(rho.dim(), &mut rng);
        let e = u.conjugate(rho.matrix()).trace_product_re(h.matrix());
        lo = lo.min(e);
        hi = hi.max(e);
    }
    (lo, hi)
}

fn report_pairs(label: String, report: &CapacityGainReport) -> Vec<(&'static str, String)> {
    let scheme = match &report.scheme {
        qbcap_core::Scheme::Uniform => "uniform".to_string(),
        qbcap_core::Scheme::Weighted(w) => format!("weighted {}", join(w.as_slice())),
    };
    vec![
        ("state", label),
        ("scheme", scheme),
        ("c_before_total", format_number(report.c_before_total.value())),
        ("c_after_total", format_number(report.c_after_total.value())),
        ("c_before_a", format_number(report.c_before_a.value())),
        ("c_after_a", format_number(report.c_after_a.value())),
        ("big_f", format_number(report.big_f)),
        ("small_f", format_number(report.small_f)),
    ]
}

pub fn measure(args: MeasureArgs) -> CliResult<()> {
    let input::LabelledState { label, state } = input::state(&args.state)?;
    let energies = input::energies(&args.energies)?;
    let (scheme, kind) = input::protocol(&args.protocol)?;
    let basis = MeasurementBasis::from_kind(kind, state.dim_b())?;
    let report = capacity_gain(&state, energies, &basis, &scheme)?;

    let format = args.output.format.unwrap_or(Format::Text);
    if format == Format::Json {
        let value = json!({
            "state": label,
            "scheme": scheme,
            "basis": kind,
            "c_before_total": num(report.c_before_total.value()),
            "c_after_total": num(report.c_after_total.value()),
            "c_before_a": num(report.c_before_a.value()),
            "c_after_a": num(report.c_after_a.value()),
            "big_f": num(report.big_f),
            "small_f": num(report.small_f),
        });
        return emit(&args.output, |w| {
            serde_json::to_writer_pretty(&mut *w, &value)?;
            writeln!(w)
        });
    }
    let pairs = report_pairs(label, &report);
    emit(&args.output, |w| write_key_values(w, &pairs, format))
}

fn family_from_flags(args: &SweepArgs, kind: FamilyArg) -> CliResult<Family> {
    Ok(match kind {
        FamilyArg::Werner => Family::Werner,
        FamilyArg::Example2 => Family::Example2,
        FamilyArg::BellDiagonal => {
            let c = args
                .bell_diag
                .as_deref()
                .ok_or_else(|| CliError::usage("--family bell-diagonal needs --bell-diag C1 C2 C3"))?;
            Family::BellDiagonal { base: [c[0], c[1], c[2]] }
        }
        FamilyArg::XState => {
            let path = args
                .x_state
                .as_deref()
                .ok_or_else(|| CliError::usage("--family x-state needs --x-state FILE"))?;
            let base: XStateParams = input::read_json(path)?;
            Family::XState { base }
        }
    })
}

fn sweep_spec(args: &SweepArgs) -> CliResult<SweepSpec> {
    if let Some(fig) = args.figure {
        return Ok(match fig {
            FigureArg::Fig2 => Figure::Fig2,
            FigureArg::Fig3 => Figure::Fig3,
        }
        .spec());
    }
    if let Some(path) = &args.spec {
        return input::read_json(path);
    }
    let Some(kind) = args.family else {
        return Err(CliError::usage("sweep needs --figure, --spec or --family"));
    };
    let family = family_from_flags(args, kind)?;
    let (Some(start), Some(stop), Some(count)) = (args.from, args.to, args.count) else {
        return Err(CliError::usage("--family needs --from, --to and --count"));
    };
    let (Some(eps_a), Some(eps_b)) = (args.eps_a, args.eps_b) else {
        return Err(CliError::usage("--family needs --eps-a and --eps-b"));
    };
    let name = args.param.clone().unwrap_or_else(|| family.default_parameter().to_string());
    let (scheme, basis) = input::protocol(&args.protocol)?;
    Ok(SweepSpec {
        family,
        grid: Grid { name, start, stop, count },
        energies: QubitPairEnergies::new(eps_a, eps_b)?,
        scheme,
        basis,
    })
}

pub fn sweep(args: SweepArgs) -> CliResult<()> {
    let spec = sweep_spec(&args)?;
    let rows = spec.run()?;
    let name = spec.grid.name.as_str();
    match args.output.format.unwrap_or(Format::Csv) {
        Format::Json => {
            let value = rows_to_json(name, &rows);
            emit(&args.output, |w| {
                serde_json::to_writer_pretty(&mut *w, &value)?;
                writeln!(w)
            })
        }
        Format::Csv | Format::Text => emit(&args.output, |w| write_csv(name, &rows, w)),
    }
}
