//! The experiment suites behind each subcommand. Every suite builds a
//! deterministic assertion batch from the effective parameters and writes
//! optional CSV exports next to it.

use crate::params::Params;
use anyhow::{Context, Result};
use lpcheck_core::exact::{pow2, rat_int, rat_to_f64};
use lpcheck_core::grid::{make_h1_test, GridSignal, GridSpec};
use lpcheck_core::group::{FiniteAbelianGroup, GroupFunction};
use lpcheck_core::kernels::{
    base_lowpass, de_la_vallee_poussin, dyadic_block, dyadic_block_time, fejer, fejer_time,
    one_sided_partition, two_sided_partition,
};
use lpcheck_core::line::{
    analytic_lebesgue_parts, commuting_operator_check, gaussian_counterexample_trajectory,
    kernel_convolve, lp_decompose_measure, measure_sum, orbit_continuity_modulus,
    quasi_invariant_check, write_trajectory_csv, AnalyticityProbe, LineMeasure,
};
use lpcheck_core::lp::{
    hormander_sup, reconstruct_vdp_identity, signed_two_sided_profile, split_kernels_profile,
    split_kernels_time, unconditional_ratio, SignPattern,
};
use lpcheck_core::measure::FiniteMeasure;
use lpcheck_core::profile::FrequencyProfile;
use lpcheck_core::quad::{simpson, simpson_complex};
use lpcheck_core::report::{assert_ge, assert_le, assert_true, SuiteReport};
use lpcheck_core::rng;
use lpcheck_core::symbolic::{cocountable_demo, CoCountMeasure, SymbolicSet};
use lpcheck_core::transfer::{
    check_algebra, measure_with_spectrum_inside, random_diagonalizable_representation,
    random_transfer_representation, spec_fourier, spec_ideal, spectrum_support_check,
    uniform_bound_c, verify_main_theorem, Representation,
};
use lpcheck_core::Complex64;
use rand::Rng;
use std::f64::consts::{PI, TAU};
use std::fs;
use std::io::BufWriter;
use std::path::Path;

fn csv_file(dir: &Path, name: &str) -> Result<BufWriter<fs::File>> {
    fs::create_dir_all(dir)
        .with_context(|| format!("creating CSV directory {}", dir.display()))?;
    let path = dir.join(name);
    let file =
        fs::File::create(&path).with_context(|| format!("writing {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn write_profile_csv(dir: &Path, name: &str, profile: &FrequencyProfile) -> Result<()> {
    let mut w = csv_file(dir, name)?;
    profile.write_csv(&mut w, Some(256))?;
    Ok(())
}

fn write_signal_csv(dir: &Path, name: &str, signal: &GridSignal) -> Result<()> {
    let mut w = csv_file(dir, name)?;
    signal.write_csv(&mut w)?;
    Ok(())
}

pub fn kernels(params: &Params) -> Result<SuiteReport> {
    let mut suite = SuiteReport::new("kernels", params.seed);
    let n = params.blocks;
    let m = params.neg_blocks;
    suite.set_config("blocks", n);
    suite.set_config("neg_blocks", m);

    let one_sided = one_sided_partition(n)?;
    let lo = -pow2(-1);
    let step = (pow2(n) - &lo) / pow2(12);
    let mut bad = 0usize;
    for k in 0..=(1usize << 12) {
        let s = &lo + rat_int(k as i64) * &step;
        if one_sided.eval_exact(&s) != rat_int(1) {
            bad += 1;
        }
    }
    suite.push(assert_le(
        "one_sided_partition_defects",
        "points in the covered band where the one-sided partition is not exactly 1",
        bad as f64,
        0.0,
    ));

    let mut bad = 0usize;
    for k in 0..1000i64 {
        let s = rat_int(-1) - rat_int(k) / rat_int(8);
        if one_sided.eval_exact(&s) != rat_int(0) {
            bad += 1;
        }
    }
    suite.push(assert_le(
        "one_sided_negative_defects",
        "points at or below -1 where the one-sided partition is not exactly 0",
        bad as f64,
        0.0,
    ));

    let two_sided = two_sided_partition(m, n)?;
    let lo = pow2(-m);
    let step = (pow2(n) - &lo) / pow2(12);
    let mut bad = 0usize;
    for k in 0..=(1usize << 12) {
        let s = &lo + rat_int(k as i64) * &step;
        if two_sided.eval_exact(&s) != rat_int(1) {
            bad += 1;
        }
    }
    suite.push(assert_le(
        "two_sided_partition_defects",
        "points in the covered band where the two-sided partition is not exactly 1",
        bad as f64,
        0.0,
    ));

    let a = 2.0;
    let mut worst = 0.0f64;
    for j in 0..20 {
        let x = -6.7 + 0.7 * j as f64;
        let quad = simpson(|s| (1.0 - s / a) * (s * x).cos(), 0.0, a, 512) / PI;
        worst = worst.max((fejer_time(a, x) - quad).abs());
    }
    suite.push(assert_le(
        "fejer_closed_form_error",
        "closed-form Fejer kernel versus quadrature of its inverse transform",
        worst,
        1e-6 * (a / TAU),
    ));

    let block = dyadic_block(1)?;
    let pts = block.breakpoints_f64().to_vec();
    let scale = dyadic_block_time(1, 0.0).norm();
    let mut worst = 0.0f64;
    for j in 0..20 {
        let x = -6.1 + 0.63 * j as f64;
        let mut quad = Complex64::new(0.0, 0.0);
        for w in pts.windows(2) {
            quad += simpson_complex(
                |s| Complex64::new(block.eval_f64(s), 0.0) * Complex64::cis(s * x),
                w[0].0,
                w[1].0,
                512,
            );
        }
        quad /= TAU;
        worst = worst.max((dyadic_block_time(1, x) - quad).norm());
    }
    suite.push(assert_le(
        "block_closed_form_error",
        "closed-form dyadic block kernel versus quadrature of its inverse transform",
        worst,
        1e-6 * scale,
    ));

    let vdp = de_la_vallee_poussin(n)?;
    suite.push(assert_le(
        "vdp_profile_sup",
        "sup of the de la Vallee Poussin profile over its breakpoints",
        rat_to_f64(&vdp.sup_abs()),
        1.0,
    ));

    if let Some(dir) = &params.csv {
        write_profile_csv(dir, "profile_lowpass.csv", &base_lowpass())?;
        for j in 0..=n.min(4) {
            write_profile_csv(dir, &format!("profile_block_{j}.csv"), &dyadic_block(j)?)?;
        }
        write_profile_csv(dir, "profile_fejer.csv", &fejer(a)?)?;
        write_profile_csv(dir, "profile_vdp.csv", &vdp)?;
    }

    Ok(suite)
}

pub fn lp_verify(params: &Params) -> Result<SuiteReport> {
    let mut suite = SuiteReport::new("lp-verify", params.seed);
    suite.set_config("delta", params.delta);
    suite.set_config("window", params.window);
    suite.set_config("blocks", params.blocks);
    suite.set_config("neg_blocks", params.neg_blocks);
    suite.set_config("trials", params.trials);
    suite.set_config("tol", params.tol);

    let n = params.blocks;
    let deep = n + 4;
    let rec_delta = (-deep as f64).exp2();
    let rec_window = 32.0;
    suite.set_config("reconstruction_delta", rec_delta);
    suite.set_config("reconstruction_window", rec_window);
    let spec = GridSpec::symmetric(rec_window, rec_delta)?;
    let band = (1.0, (2.0f64).powi(n - 1));
    for i in 0..3u64 {
        let f = make_h1_test(params.seed + i, band, &spec)?;
        let norm = f.l1_norm();
        let vdp = reconstruct_vdp_identity(&f, n)?;
        suite.push(assert_le(
            &format!("vdp_identity_{i}"),
            "lowpass plus blocks equals the de la Vallee Poussin smoothing",
            vdp.residual,
            1e-9 * norm,
        ));
        let report = unconditional_ratio(&f, n, params.trials.min(50), params.seed + i)?;
        suite.push(assert_le(
            &format!("reconstruction_{i}"),
            "all-plus signed sum recovers the band-limited signal",
            report.reconstruction_residual,
            params.tol,
        ));
    }

    let mut rng = rng::seeded(params.seed);
    let mut worst_sup = 0.0f64;
    for _ in 0..params.trials {
        let pattern = SignPattern::random(-params.neg_blocks, n, &mut rng);
        let profile = signed_two_sided_profile(&pattern)?;
        worst_sup = worst_sup.max(rat_to_f64(&profile.sup_abs()));
    }
    suite.push(assert_le(
        "signed_profile_sup",
        "sup of every random signed combination of blocks",
        worst_sup,
        1.0,
    ));

    let m_split = params.neg_blocks.min(4);
    let n_split = n.min(8);
    let pattern = SignPattern::random(-m_split, n_split, &mut rng);
    let dx = PI / ((n_split + 2) as f64).exp2();
    let len = 1usize << (m_split + n_split + 5) as usize;
    let split_spec = GridSpec::new(-(len as f64) * dx / 2.0, dx, len)?;
    let kernels = split_kernels_profile(&pattern, &split_spec)?;
    let mut sup_dft = 0.0f64;
    for k in &kernels {
        for v in k.spectrum() {
            sup_dft = sup_dft.max(v.norm());
        }
    }
    suite.push(assert_le(
        "split_dft_sup",
        "DFT magnitude of each sampled split kernel",
        sup_dft,
        1.0 + 1e-6,
    ));

    let f = make_h1_test(params.seed, band, &spec)?;
    let shallow_ratio = unconditional_ratio(&f, n, params.trials, params.seed)?.max_ratio;
    let deep_ratio = unconditional_ratio(&f, deep, params.trials, params.seed)?.max_ratio;
    suite.push(assert_le(
        "depth_ratio_stability",
        "worst signed-sum ratio does not grow when four blocks are added",
        deep_ratio,
        1.10 * shallow_ratio,
    ));

    let m_time = params.neg_blocks.min(2);
    let nyquist_blocks = (std::f64::consts::PI / params.delta).log2().floor() as i32 - 1;
    let n_time = n.min(nyquist_blocks);
    let pattern = SignPattern::random(-m_time, n_time, &mut rng);
    let time_spec = GridSpec::symmetric(params.window, params.delta)?;
    let coarse = split_kernels_time(&pattern, &time_spec);
    let fine_spec = GridSpec::symmetric(params.window, params.delta / 2.0)?;
    let fine = split_kernels_time(&pattern, &fine_spec);
    for (label, idx) in [("k2", 1usize), ("k4", 3usize)] {
        let (bc, _) = hormander_sup(&coarse[idx])?;
        let (bf, _) = hormander_sup(&fine[idx])?;
        let change = if bc > 0.0 { (bf - bc).abs() / bc } else { f64::INFINITY };
        suite.push(assert_le(
            &format!("hormander_stability_{label}"),
            "shift-difference bound moves little under grid halving",
            change,
            0.10,
        ));
    }

    if let Some(dir) = &params.csv {
        for (j, k) in coarse.iter().enumerate() {
            write_signal_csv(dir, &format!("split_kernel_{}.csv", j + 1), k)?;
        }
    }

    Ok(suite)
}

fn conditioned_representation(
    group: &FiniteAbelianGroup,
    dim: usize,
    max_c: f64,
    rng: &mut impl Rng,
) -> Representation {
    loop {
        let rep = random_diagonalizable_representation(group, dim, rng);
        if uniform_bound_c(&rep) <= max_c {
            return rep;
        }
    }
}

fn unit_group_function(group: &FiniteAbelianGroup, rng: &mut impl Rng) -> GroupFunction {
    loop {
        let f = GroupFunction::from_values(
            group,
            (0..group.order()).map(|_| rng::complex_gaussian(rng)).collect(),
        )
        .expect("value count matches the group order");
        let norm = f.l1_norm();
        if norm > 1e-6 {
            return f.scale(Complex64::new(1.0 / norm, 0.0));
        }
    }
}

fn unit_measure(dim: usize, rng: &mut impl Rng) -> FiniteMeasure {
    loop {
        let mu = FiniteMeasure::random(dim, rng);
        let norm = mu.tv_norm();
        if norm > 1e-6 {
            return mu.scale(Complex64::new(1.0 / norm, 0.0));
        }
    }
}

fn random_spectral_instance(
    group: &FiniteAbelianGroup,
    dim: usize,
    rng: &mut impl Rng,
) -> Result<(Representation, Vec<usize>, FiniteMeasure)> {
    loop {
        let rep = random_diagonalizable_representation(group, dim, rng);
        let generic = FiniteMeasure::random(dim, rng);
        let reachable = spec_fourier(&rep, &generic, 1e-8)?.chars;
        if reachable.is_empty() {
            continue;
        }
        let mut s: Vec<usize> = reachable.iter().copied().filter(|_| rng.gen()).collect();
        if s.is_empty() {
            s.push(reachable[rng.gen_range(0..reachable.len())]);
        }
        let mu = measure_with_spectrum_inside(&rep, &s, rng)?;
        if mu.tv_norm() < 1e-6 {
            continue;
        }
        return Ok((rep, s, mu));
    }
}

pub fn transfer_verify(params: &Params) -> Result<SuiteReport> {
    let mut suite = SuiteReport::new("transfer-verify", params.seed);
    let group_label: Vec<String> = params.group.iter().map(|f| format!("Z{f}")).collect();
    suite.set_config("group", group_label.join("x"));
    suite.set_config("dim", params.dim);
    suite.set_config("trials", params.trials);

    let group = FiniteAbelianGroup::new(&params.group)?;
    let order = group.order();
    let mut rng = rng::seeded(params.seed);

    let mut verified = 0usize;
    let mut attempt = 0u64;
    while verified < params.trials {
        attempt += 1;
        let rep = random_transfer_representation(&group, params.dim, &mut rng);
        let mut s: Vec<usize> = (0..order).filter(|_| rng.gen::<bool>()).collect();
        if s.is_empty() {
            s.push(rng.gen_range(0..order));
        }
        let mu = measure_with_spectrum_inside(&rep, &s, &mut rng)?;
        if mu.tv_norm() < 1e-6 {
            continue;
        }
        let nu = GroupFunction::from_values(
            &group,
            (0..order).map(|_| rng::complex_gaussian(&mut rng)).collect(),
        )?;
        let report = verify_main_theorem(&rep, &s, &nu, &mu, params.seed + attempt)?;
        suite.push(assert_le(
            &format!("transfer_trial_{verified:03}"),
            "transferred convolution norm within the certified bound",
            report.ratio,
            report.bound,
        ));
        verified += 1;
    }

    let algebra_trials = params.trials.min(20);
    let mut worst_commutation = 0.0f64;
    let mut worst_associativity = 0.0f64;
    let mut worst_ratio = 0.0f64;
    for _ in 0..algebra_trials {
        let rep = conditioned_representation(&group, params.dim, 30.0, &mut rng);
        let sigma = unit_group_function(&group, &mut rng);
        let nu = unit_group_function(&group, &mut rng);
        let mu = unit_measure(params.dim, &mut rng);
        let report = check_algebra(&sigma, &nu, &mu, &rep)?;
        worst_commutation = worst_commutation.max(report.commutation_residual);
        worst_associativity = worst_associativity.max(report.associativity_residual);
        worst_ratio = worst_ratio.max(report.norm_ratio);
    }
    suite.push(assert_le(
        "algebra_commutation",
        "worst translation-commutation residual over unit-normalized triples",
        worst_commutation,
        1e-10,
    ));
    suite.push(assert_le(
        "algebra_associativity",
        "worst associativity residual over unit-normalized triples",
        worst_associativity,
        1e-10,
    ));
    suite.push(assert_le(
        "algebra_norm_ratio",
        "worst transferred-convolution norm against its submultiplicative bound",
        worst_ratio,
        1.0 + 1e-9,
    ));

    let spectral_trials = params.trials.min(50);
    let mut mismatches = 0usize;
    let mut escapes = 0usize;
    for trial in 0..spectral_trials {
        let dim = 1 + trial % params.dim;
        let (rep, _, mu) = random_spectral_instance(&group, dim, &mut rng)?;
        let fourier = spec_fourier(&rep, &mu, 1e-8)?;
        let ideal = spec_ideal(&rep, &mu)?;
        if fourier.chars != ideal.chars {
            mismatches += 1;
            continue;
        }
        for t in 0..order {
            if spec_fourier(&rep, &rep.apply(t, &mu)?, 1e-8)?.chars != fourier.chars {
                mismatches += 1;
                break;
            }
        }
        let nu = unit_group_function(&group, &mut rng);
        if !spectrum_support_check(&rep, &nu, &mu)? {
            escapes += 1;
        }
    }
    suite.push(assert_le(
        "spectrum_route_mismatches",
        "instances where the transform and ideal spectra disagree or move under translation",
        mismatches as f64,
        0.0,
    ));
    suite.push(assert_le(
        "spectrum_support_escapes",
        "instances where a convolution spectrum leaves the transform support",
        escapes as f64,
        0.0,
    ));

    Ok(suite)
}

pub fn analytic_demo(params: &Params) -> Result<SuiteReport> {
    let mut suite = SuiteReport::new("analytic-demo", params.seed);
    suite.set_config("tol", params.tol);
    suite.set_config("decomposition_window", 4096.0);
    suite.set_config("decomposition_delta", 1.0 / 32.0);

    let dx = 1.0 / 32.0;
    let spec = GridSpec::symmetric(4096.0, dx)?;
    let base = make_h1_test(params.seed, (1.0, 16.0), &spec)?;
    let sigma_env = 4096.0 / 3.0;
    let mut samples = base.samples().to_vec();
    for (j, v) in samples.iter_mut().enumerate() {
        let x = spec.x(j);
        *v *= (-(x / sigma_env).powi(2)).exp();
    }
    let mu = LineMeasure::from_density(GridSignal::from_samples(spec, samples)?);
    let probe = AnalyticityProbe::new(vec![(-512.0, -128.0), (0.0, 256.0)], 1e-3, 4);
    let (pieces, report) = lp_decompose_measure(&mu, 5, &[1; 6], &probe)?;
    suite.push(assert_le(
        "decomposition_residual",
        "total-variation residual of the reassembled dyadic decomposition",
        report.reconstruction_residual,
        params.tol,
    ));
    let max_atom = pieces.iter().map(LineMeasure::atom_mass).fold(0.0, f64::max);
    suite.push(assert_le(
        "decomposition_piece_atoms",
        "atomic mass appearing in any smoothed decomposition piece",
        max_atom,
        0.0,
    ));

    let mdx = 1.0 / 32.0;
    let mspec = GridSpec::symmetric(64.0, mdx)?;
    let smooth = LineMeasure::from_density(GridSignal::from_fn(mspec, |x| {
        Complex64::cis(2.0 * x) * fejer_time(1.5, x)
    }));
    let mprobe = AnalyticityProbe::new(vec![(-8.0, -2.0), (0.0, 4.0)], 2e-3, 1);
    let (mpieces, _) = lp_decompose_measure(&smooth, 1, &[1, 1], &mprobe)?;
    let mut reconstructed = mpieces[0].clone();
    for piece in &mpieces[1..] {
        reconstructed = measure_sum(&reconstructed, piece)?;
    }
    let deltas = [8.0 * mdx, 4.0 * mdx, 2.0 * mdx, mdx];
    let moduli = orbit_continuity_modulus(&reconstructed, &deltas)?;
    let mut worst_step = 0.0f64;
    for w in moduli.windows(2) {
        if w[0] > 0.0 {
            worst_step = worst_step.max(w[1] / w[0]);
        }
    }
    suite.push(assert_le(
        "orbit_modulus_halving",
        "worst ratio of successive orbit moduli under step halving",
        worst_step,
        1.0 / 1.5,
    ));

    let cspec = GridSpec::symmetric(96.0, 0.125)?;
    let analytic = LineMeasure::from_density(GridSignal::from_fn(cspec, |x| {
        Complex64::cis(4.0 * x) * fejer_time(2.0, x)
    }));
    let cprobe = AnalyticityProbe::new(vec![(-8.0, -2.0), (0.0, 4.0)], 1e-3, 1);
    let kernel = GridSignal::from_fn(GridSpec::symmetric(4.0, 0.125)?, |x| {
        Complex64::new((-(x / 0.25).powi(2)).exp(), 0.0)
    });
    let op = move |m: &LineMeasure| kernel_convolve(&kernel, m);
    let creport = commuting_operator_check(&op, &analytic, &cprobe)?;
    suite.push(assert_le(
        "operator_commutation_residual",
        "worst translation-commutation residual of the convolution operator",
        creport.commutation_residual,
        1e-9,
    ));
    suite.push(assert_true(
        "commuting_operator_output",
        "the operator image stays analytic at ten times the probe tolerance",
        creport.pass,
    ));

    let sspec = GridSpec::symmetric(128.0, 0.25)?;
    let split_mu = LineMeasure::from_density(GridSignal::from_fn(sspec, |x| {
        Complex64::cis(3.0 * x) * fejer_time(1.5, x)
    }));
    let origin = sspec.origin;
    let sdx = sspec.dx;
    let sigma = LineMeasure::from_density(GridSignal::from_fn(sspec, move |x| {
        let j = ((x - origin) / sdx).round() as i64;
        if j % 2 == 0 {
            Complex64::new((-x * x / 400.0).exp(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }));
    let sprobe = AnalyticityProbe::new(vec![(-16.0, -4.0), (0.0, 8.0)], 2e-3, 2);
    let sreport = analytic_lebesgue_parts(&split_mu, &sigma, &sprobe)?;
    suite.push(assert_true(
        "analytic_parts_pass",
        "both Lebesgue parts against the split-support reference stay analytic",
        sreport.pass,
    ));
    suite.push(assert_ge(
        "analytic_parts_ac_norm",
        "the absolutely continuous part is nonzero",
        sreport.ac_norm,
        1e-6,
    ));
    suite.push(assert_ge(
        "analytic_parts_singular_norm",
        "the singular part is nonzero",
        sreport.singular_norm,
        1e-6,
    ));

    let qspec = GridSpec::symmetric(16.0, 0.25)?;
    let qsigma = GridSignal::from_fn(qspec, |x| Complex64::new((-x * x / 32.0).exp(), 0.0));
    let qreport = quasi_invariant_check(&qsigma, &[1, -2, 5]);
    suite.push(assert_true(
        "quasi_invariance",
        "the full-support reference density has translation-invariant support",
        qreport.pass && !qreport.degenerate,
    ));

    if let Some(dir) = &params.csv {
        write_signal_csv(dir, "analytic_smooth_input.csv", smooth.density())?;
        write_signal_csv(dir, "analytic_smooth_reconstruction.csv", reconstructed.density())?;
    }

    Ok(suite)
}

pub fn counterexample(params: &Params, which: &str) -> Result<SuiteReport> {
    let mut suite = SuiteReport::new("counterexample", params.seed);
    suite.set_config("which", which);

    let run_gaussian = matches!(which, "gaussian" | "all");
    let run_cocountable = matches!(which, "cocountable" | "all");
    if !run_gaussian && !run_cocountable {
        anyhow::bail!("unknown counterexample `{which}` (expected gaussian, cocountable, or all)");
    }

    if run_gaussian {
        let spec = GridSpec::symmetric(40.0, 0.01)?;
        let gauss = gaussian_counterexample_trajectory(spec);
        suite.push(assert_ge(
            "gaussian_defect",
            "negative-frequency energy fraction of the Gaussian slice trajectory",
            gauss.defect,
            1e-3,
        ));
        suite.push(assert_le(
            "gaussian_symmetry",
            "asymmetry of the trajectory about the origin",
            gauss.symmetry_residual,
            1e-12,
        ));
        if let Some(dir) = &params.csv {
            let mut w = csv_file(dir, "gaussian_trajectory.csv")?;
            write_trajectory_csv(&gauss.trajectory, &mut w)?;
        }
    }

    if run_cocountable {
        let mu = CoCountMeasure::diffuse_minus_origin_atom();
        let mut rng = rng::seeded(params.seed);
        let mut sets = Vec::with_capacity(50);
        for k in 0..50usize {
            let count = 1 + rng.gen_range(0..4);
            let points: Vec<f64> =
                (0..count).map(|_| rng.gen_range(-20..=20) as f64 * 0.5).collect();
            sets.push(if k % 2 == 0 {
                SymbolicSet::Countable(points)
            } else {
                SymbolicSet::CoCountable(points)
            });
        }
        let t_samples: Vec<f64> = (-40..=40).map(|k| k as f64 * 0.5).collect();
        let report = cocountable_demo(&mu, &sets, &t_samples, 0.9)?;
        suite.push(assert_le(
            "cocount_norm_error",
            "distance of the witness measure norm from 2",
            (report.norm - 2.0).abs(),
            0.0,
        ));
        suite.push(assert_true(
            "cocount_certified",
            "every sampled trajectory vanishes off its finite exceptional set",
            report.certified,
        ));
        let violations = report.sets.iter().filter(|s| !s.within_bound).count();
        suite.push(assert_le(
            "cocount_bound_violations",
            "symbolic sets whose nonzero samples exceed the exceptional bound",
            violations as f64,
            0.0,
        ));
    }

    Ok(suite)
}
