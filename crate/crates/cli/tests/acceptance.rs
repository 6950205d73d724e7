//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use qudit_sorter::{
    awg_design, awg_module, build_michelson, build_mzi, controlled, decompose, efficiency, fourier,
    oam_module, pauli_x, pauli_z, pbs_module, reconstruct, simulate, sorting_matrix, tensor, Complex64,
    CompositeState, OamBasisMap, OutputGate, Reflector, SorterSpec, UnitaryMatrix,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn identity_perm(d: usize) -> Vec<usize> {
    (0..d).collect()
}

fn reversal(d: usize) -> Vec<usize> {
    (0..d).map(|s| (d - s) % d).collect()
}

fn local(d: usize, g: &UnitaryMatrix) -> UnitaryMatrix {
    tensor(&UnitaryMatrix::identity(d), g)
}

fn qsorter(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qsorter"))
        .args(args)
        .output()
        .expect("failed to run qsorter")
}

/// (1 (x) F^dag) C(Z_d) (1 (x) F) = C(X_d) for d = 2..32, max-entry 1e-12, under 5 s.
fn diagonalization_identity() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for d in 2..=32 {
        let f = fourier(d).map_err(|e| e.to_string())?;
        let lhs = local(d, &f.adjoint())
            .matmul(&controlled(&pauli_z(d).unwrap()))
            .matmul(&local(d, &f));
        let err = lhs.max_abs_diff(&controlled(&pauli_x(d).unwrap()));
        worst = worst.max(err);
        check(err <= 1e-12, format!("d = {d}: error {err:e}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 5.0, format!("took {secs:.2} s"))?;
    Ok(format!("max error {worst:.2e}, {secs:.2} s"))
}

/// Ideal OAM sorter, d = 2..64: identity sorting matrix, diagonals >= 1 - 1e-10, under 30 s.
fn full_efficiency() -> Outcome {
    let start = Instant::now();
    let mut lowest = 1.0f64;
    for d in 2..=64 {
        let spec = SorterSpec::new(oam_module(OamBasisMap::canonical(d).unwrap()));
        let p = sorting_matrix(&build_mzi(&spec).unwrap()).map_err(|e| e.to_string())?;
        let dist = p.distance_to_permutation(&identity_perm(d));
        let eff = efficiency(&p);
        lowest = lowest.min(eff.worst);
        check(eff.worst >= 1.0 - 1e-10, format!("d = {d}: worst efficiency {}", eff.worst))?;
        check(dist <= 1e-10, format!("d = {d}: distance to identity {dist:e}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 30.0, format!("took {secs:.2} s"))?;
    Ok(format!("lowest diagonal {lowest}, {secs:.2} s"))
}

/// d = 2 PBS module gives CNOT; H exits port 0 and V port 1 with probability 1 +/- 1e-12.
fn pbs_special_case() -> Outcome {
    let u = build_mzi(&SorterSpec::new(pbs_module())).unwrap();
    let cnot = controlled(&pauli_x(2).unwrap());
    check(u.as_permutation(1e-15) == Some(vec![0, 1, 3, 2]), "not the CNOT permutation")?;
    let err = u.max_abs_diff(&cnot);
    check(err <= 1e-12, format!("CNOT error {err:e}"))?;
    for (s, name) in [(0, "H"), (1, "V")] {
        let out = simulate(&u, &CompositeState::basis(2, s, 0).unwrap()).unwrap();
        let prob = out.port_probability(s);
        check((prob - 1.0).abs() <= 1e-12, format!("{name} reaches port {s} with {prob}"))?;
    }
    Ok(format!("CNOT error {err:.1e}"))
}

/// 100 random superpositions per d in {2, 4, 8, 16}: fidelity with sum_s a_s |s>|s> is 1 within 1e-12.
fn entanglement_generation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2017);
    let mut worst = 0.0f64;
    for d in [2, 4, 8, 16] {
        let u = build_mzi(&SorterSpec::new(oam_module(OamBasisMap::canonical(d).unwrap()))).unwrap();
        for _ in 0..100 {
            let input = CompositeState::random_observable_input(d, &mut rng).unwrap();
            let mut target = vec![Complex64::new(0.0, 0.0); d * d];
            for s in 0..d {
                target[s * d + s] = input.amplitude(s, 0);
            }
            let target = CompositeState::new(d, target).map_err(|e| e.to_string())?;
            let f = simulate(&u, &input).unwrap().fidelity(&target).unwrap();
            worst = worst.max((f - 1.0).abs());
        }
        check(worst <= 1e-12, format!("d = {d}: fidelity deviation {worst:e}"))?;
    }
    Ok(format!("max |1 - fidelity| {worst:.1e}"))
}

/// F instead of F^dag at the output: sorting matrix is the permutation j -> -j mod d, d = 2..16.
fn output_relabeling() -> Outcome {
    let mut worst = 0.0f64;
    for d in 2..=16 {
        let spec = SorterSpec::new(oam_module(OamBasisMap::canonical(d).unwrap())).with_output_gate(OutputGate::F);
        let p = sorting_matrix(&build_mzi(&spec).unwrap()).unwrap();
        let dist = p.distance_to_permutation(&reversal(d));
        worst = worst.max(dist);
        check(dist <= 1e-10, format!("d = {d}: distance {dist:e}"))?;
    }
    Ok(format!("max distance to reversal {worst:.1e}"))
}

/// Five-factor dense product of the folded interferometer.
fn michelson_oracle(levels: &[i64], mirror: bool) -> UnitaryMatrix {
    let d = levels.len();
    let lf = local(d, &fourier(d).unwrap());
    let half = |l: i64, k: usize| l as f64 * k as f64 * PI / d as f64;
    let diag = |f: &dyn Fn(usize, usize) -> f64| {
        let mut phases = vec![0.0; d * d];
        for s in 0..d {
            for k in 0..d {
                phases[s * d + k] = f(k, s);
            }
        }
        UnitaryMatrix::diagonal_phases(&phases)
    };
    let d1 = diag(&|k, s| half(levels[s], k));
    if !mirror {
        return lf.matmul(&d1).matmul(&d1).matmul(&lf);
    }
    let mut flip = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for s in 0..d {
        flip[(d - s) % d][s] = Complex64::new(1.0, 0.0);
    }
    let r = tensor(&UnitaryMatrix::from_rows(flip).unwrap(), &UnitaryMatrix::identity(d));
    let d2 = diag(&|k, s_out| half(-levels[(d - s_out) % d], k));
    lf.matmul(&d2).matmul(&r).matmul(&d1).matmul(&lf)
}

/// Retroreflector sorts with j -> -j mod d; mirror + OAM sends everything to port 0 with
/// the observable flipped, matching the five-factor oracle for d = 2..8.
fn michelson_behavior() -> Outcome {
    for d in 2..=16 {
        let spec = SorterSpec::michelson(oam_module(OamBasisMap::canonical(d).unwrap()), Reflector::Retroreflector)
            .unwrap();
        let p = sorting_matrix(&build_michelson(&spec).unwrap()).unwrap();
        let dist = p.distance_to_permutation(&reversal(d));
        check(dist <= 1e-10, format!("retroreflector d = {d}: distance {dist:e}"))?;
    }
    let mut worst = 0.0f64;
    for d in 2..=8 {
        for map in [OamBasisMap::canonical(d).unwrap(), OamBasisMap::centered(d).unwrap()] {
            let spec = SorterSpec::michelson(oam_module(map.clone()), Reflector::Mirror).unwrap();
            let u = build_michelson(&spec).unwrap();
            let retro = michelson_oracle(map.levels(), false);
            let retro_built = build_michelson(
                &SorterSpec::michelson(oam_module(map.clone()), Reflector::Retroreflector).unwrap(),
            )
            .unwrap();
            check(retro_built.approx_eq(&retro, 1e-12), format!("retroreflector oracle mismatch d = {d}"))?;
            let err = u.max_abs_diff(&michelson_oracle(map.levels(), true));
            worst = worst.max(err);
            check(err <= 1e-12, format!("mirror d = {d}: oracle error {err:e}"))?;
            for s in 0..d {
                let out = simulate(&u, &CompositeState::basis(d, s, 0).unwrap()).unwrap();
                let target = CompositeState::basis(d, (d - s) % d, 0).unwrap();
                let f = out.fidelity(&target).unwrap();
                check((f - 1.0).abs() <= 1e-10, format!("mirror d = {d}, s = {s}: fidelity {f}"))?;
            }
            let dist = sorting_matrix(&u).unwrap().distance_to_permutation(&vec![0; d]);
            check(dist <= 1e-10, format!("mirror d = {d}: port-0 distance {dist:e}"))?;
        }
    }
    Ok(format!("mirror oracle error {worst:.1e}"))
}

/// lambda = (3, 2): lengths (6, 3), residual 0, identity sorting within 1e-10.
/// lambda = (2, 1): residual > 0, and exhaustive search finds no exact integers.
fn awg_exact_design() -> Outcome {
    let design = awg_design(2, &[3.0, 2.0], 10).map_err(|e| e.to_string())?;
    check(design.lengths == vec![6.0, 3.0], format!("lengths {:?}", design.lengths))?;
    check(design.residual == 0.0, format!("residual {}", design.residual))?;
    let p = sorting_matrix(&build_mzi(&SorterSpec::new(awg_module(design).unwrap())).unwrap()).unwrap();
    let dist = p.distance_to_permutation(&[0, 1]);
    check(dist <= 1e-10, format!("distance to identity {dist:e}"))?;

    // oracle: arm 1 needs 2 n0 = 1/2 + n1, impossible for integers
    let bound = 50i64;
    let feasible = (-bound..=bound).any(|n0| (-bound..=bound).any(|n1| 2.0 * n0 as f64 == 0.5 + n1 as f64));
    check(!feasible, "exhaustive search found an exact solution")?;
    let approx = awg_design(2, &[2.0, 1.0], bound as u32).map_err(|e| e.to_string())?;
    check(approx.residual > 0.0 && !approx.is_exact(), format!("residual {}", approx.residual))?;
    Ok(format!("approximate residual for (2, 1): {:.4}", approx.residual))
}

/// decompose(F_d), d in {2, 4, 8, 16, 32}: error < 1e-10, <= d(d-1)/2 beamsplitters,
/// sorter rebuilt from the mesh equals C(X_d) within 1e-9.
fn mesh_compilation() -> Outcome {
    let mut worst = 0.0f64;
    for d in [2, 4, 8, 16, 32] {
        let f = fourier(d).unwrap();
        let mesh = decompose(&f).map_err(|e| e.to_string())?;
        let f_mesh = reconstruct(&mesh).map_err(|e| e.to_string())?;
        let err = f_mesh.max_abs_diff(&f);
        worst = worst.max(err);
        check(err < 1e-10, format!("d = {d}: reconstruction error {err:e}"))?;
        let count = mesh.beamsplitter_count();
        check(count <= d * (d - 1) / 2, format!("d = {d}: {count} beamsplitters"))?;
        let mut phases = vec![0.0; d * d];
        for s in 0..d {
            for k in 0..d {
                phases[s * d + k] = 2.0 * PI * (k * s) as f64 / d as f64;
            }
        }
        let sorter = local(d, &f_mesh.adjoint())
            .matmul(&UnitaryMatrix::diagonal_phases(&phases))
            .matmul(&local(d, &f_mesh));
        let e2e = sorter.max_abs_diff(&controlled(&pauli_x(d).unwrap()));
        check(e2e <= 1e-9, format!("d = {d}: end-to-end error {e2e:e}"))?;
    }
    Ok(format!("max reconstruction error {worst:.1e}"))
}

/// compare-cascade: d = 8 gives 7 MZIs, 14 prisms, 3 holograms vs 1 interferometer and 8 prisms;
/// non-power-of-two d is flagged.
fn cascade_comparison() -> Outcome {
    let out = qsorter(&["compare-cascade", "--d", "8"]);
    check(out.status.code() == Some(0), format!("exit {:?}", out.status.code()))?;
    let text = String::from_utf8_lossy(&out.stdout);
    check(
        text.contains("sorter: 1 interferometer, 8 Dove prisms"),
        format!("unexpected sorter line in {text}"),
    )?;
    check(
        text.contains("cascade: 7 MZIs, 14 Dove prisms, 3 holograms"),
        format!("unexpected cascade line in {text}"),
    )?;
    let out = qsorter(&["compare-cascade", "--d", "2"]);
    check(
        String::from_utf8_lossy(&out.stdout).contains("cascade: 1 MZIs, 2 Dove prisms, 0 holograms"),
        "d = 2 counts",
    )?;
    let out = qsorter(&["compare-cascade", "--d", "6"]);
    check(
        String::from_utf8_lossy(&out.stdout).contains("not applicable (d not a power of 2)"),
        "d = 6 not flagged",
    )?;
    Ok("d = 8 counts reproduced, d = 6 flagged".into())
}

/// sigma = 0 gives (1.0, 1.0) exactly; d = 2 crosstalk (1 + cos delta)/2 within 1e-12;
/// seeded sweeps are byte-identical.
fn noise_robustness(dir: &Path) -> Outcome {
    for d in [2, 3, 4, 8] {
        let spec = SorterSpec::new(oam_module(OamBasisMap::canonical(d).unwrap()));
        let r = qudit_sorter::sweep_perturbations(&spec, 0.0, 10, 1).map_err(|e| e.to_string())?;
        for e in &r.trials {
            check(e.worst == 1.0 && e.mean == 1.0, format!("d = {d}: sigma = 0 gave {e:?}"))?;
        }
    }
    for delta in [0.0, PI / 2.0, PI] {
        let spec = SorterSpec::new(pbs_module()).with_perturbations(vec![0.0, delta]).unwrap();
        let eff = efficiency(&sorting_matrix(&build_mzi(&spec).unwrap()).unwrap());
        let expected = (1.0 + delta.cos()) / 2.0;
        check(
            (eff.mean - expected).abs() <= 1e-12 && (eff.worst - expected).abs() <= 1e-12,
            format!("delta = {delta}: {eff:?} vs {expected}"),
        )?;
    }
    let config = dir.join("sweep.json");
    std::fs::write(
        &config,
        r#"{"d": 4, "observable": {"kind": "oam"}, "sweep": {"sigmas": [0.0, 0.05, 0.2], "trials": 200, "seed": 7}}"#,
    )
    .map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    let out_path = dir.join("sweep-report.json");
    for _ in 0..2 {
        let out = qsorter(&["sweep", "--config", config.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
        check(out.status.code() == Some(0), format!("sweep exit {:?}", out.status.code()))?;
        reports.push(std::fs::read(&out_path).map_err(|e| e.to_string())?);
    }
    check(reports[0] == reports[1], "seeded sweep reports differ")?;
    Ok(format!("sweep report {} bytes, identical across runs", reports[0].len()))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<Criterion> = vec![
        ("1 diagonalization identity", Box::new(diagonalization_identity)),
        ("2 100% sorting efficiency", Box::new(full_efficiency)),
        ("3 PBS special case", Box::new(pbs_special_case)),
        ("4 entanglement generation", Box::new(entanglement_generation)),
        ("5 output relabeling", Box::new(output_relabeling)),
        ("6 Michelson behavior", Box::new(michelson_behavior)),
        ("7 AWG exact design", Box::new(awg_exact_design)),
        ("8 mesh compilation", Box::new(mesh_compilation)),
        ("9 cascade comparison", Box::new(cascade_comparison)),
        ("10 noise robustness", Box::new(move || noise_robustness(dir.path()))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
