//! Command implementations: each builds a typed output document from the
//! core library and renders it in the requested format.

use std::fmt::Write as _;

use lensform_core::counting;
use lensform_core::harmonic;
use lensform_core::isospectral::{self, SearchOptions, Verdict};
use lensform_core::lattice::CongruenceLattice;
use lensform_core::spectrum;
use lensform_core::toric;
use lensform_core::LensSpace;

use crate::output::*;

pub fn cmd_spectrum(lens: &LensSpace, max_k: u64) -> Document<SpectrumInputs, SpectrumResults> {
    let table = spectrum::spectrum_table(lens, max_k);
    let rows = table
        .entries
        .iter()
        .map(|r| SpectrumRowOut {
            k: r.k,
            lambda: r.lambda,
            mult: r.mult.to_string(),
        })
        .collect();
    document(
        "spectrum",
        SpectrumInputs {
            lens: LensEcho::new(lens),
            max_k,
        },
        SpectrumResults { rows },
    )
}

pub fn render_spectrum(doc: &Document<SpectrumInputs, SpectrumResults>, format: Format) -> String {
    match format {
        Format::Json => to_json(doc),
        Format::Csv => {
            let mut s = String::from("k,lambda,mult\n");
            for r in &doc.results.rows {
                let _ = writeln!(s, "{},{},{}", r.k, r.lambda, r.mult);
            }
            s
        }
        Format::Plain => {
            let mut s = format!(
                "spectrum of {} up to k = {}\n",
                doc.inputs.lens.lens, doc.inputs.max_k
            );
            let _ = writeln!(s, "{:>6} {:>12} {:>16}", "k", "lambda", "mult");
            for r in &doc.results.rows {
                let _ = writeln!(s, "{:>6} {:>12} {:>16}", r.k, r.lambda, r.mult);
            }
            s
        }
    }
}

pub fn cmd_isospectral(a: &LensSpace, b: &LensSpace) -> Document<PairInputs, IsospectralResults> {
    let report = isospectral::isospectral_test(a, b);
    let isometry = a.isometry_to(b);
    let (verdict, witness, trivial) = match report.verdict {
        Verdict::Isospectral => ("isospectral".to_string(), None, None),
        Verdict::NotIsospectral { k, counts } => (
            "not_isospectral".to_string(),
            Some(WitnessOut {
                k,
                count_a: counts.0,
                count_b: counts.1,
            }),
            None,
        ),
        Verdict::Trivial { same_q, same_n } => (
            "trivial".to_string(),
            None,
            Some(TrivialOut { same_q, same_n }),
        ),
    };
    let certificate = report.certificate.map(|cert| {
        let render = |qp: &counting::QuasiPolynomial| {
            (0..qp.period())
                .map(|j| qp.class_coefficients(j).iter().map(ratio_string).collect())
                .collect()
        };
        CertificateOut {
            period: cert.0.period(),
            degree: cert.0.degree(),
            coefficients_a: render(&cert.0),
            coefficients_b: render(&cert.1),
        }
    });
    document(
        "isospectral",
        PairInputs {
            a: LensEcho::new(a),
            b: LensEcho::new(b),
        },
        IsospectralResults {
            verdict,
            sample_bound: isospectral::certificate_sample_bound(a.q(), a.n()),
            witness,
            trivial,
            isometric: isometry.is_some(),
            isometry: isometry.map(|w| IsometryOut {
                t: w.t,
                sigma: w.sigma,
                eps: w.eps,
            }),
            stanley_match: report.stanley_match,
            certificate,
        },
    )
}

pub fn render_isospectral(
    doc: &Document<PairInputs, IsospectralResults>,
    format: Format,
) -> String {
    match format {
        Format::Json => to_json(doc),
        Format::Csv => {
            let r = &doc.results;
            let mut s = String::from("key,value\n");
            let _ = writeln!(s, "lens_a,{}", doc.inputs.a.lens);
            let _ = writeln!(s, "lens_b,{}", doc.inputs.b.lens);
            let _ = writeln!(s, "verdict,{}", r.verdict);
            if let Some(w) = &r.witness {
                let _ = writeln!(s, "witness_k,{}", w.k);
                let _ = writeln!(s, "witness_counts,{};{}", w.count_a, w.count_b);
            }
            let _ = writeln!(s, "isometric,{}", r.isometric);
            let _ = writeln!(s, "stanley_match,{}", r.stanley_match);
            s
        }
        Format::Plain => {
            let r = &doc.results;
            let mut s = format!(
                "{} vs {}: {}\n",
                doc.inputs.a.lens, doc.inputs.b.lens, r.verdict
            );
            if let Some(w) = &r.witness {
                let _ = writeln!(
                    s,
                    "first differing shell: k = {} ({} vs {})",
                    w.k, w.count_a, w.count_b
                );
            }
            if r.verdict == "isospectral" {
                let _ = writeln!(
                    s,
                    "certified by shell agreement on 0..{}",
                    r.sample_bound - 1
                );
            }
            let _ = writeln!(s, "isometric: {}", r.isometric);
            if let Some(w) = &r.isometry {
                let _ = writeln!(
                    s,
                    "isometry: t = {}, sigma = {:?}, eps = {:?}",
                    w.t, w.sigma, w.eps
                );
            }
            let _ = writeln!(s, "stanley invariants match: {}", r.stanley_match);
            s
        }
    }
}

pub fn cmd_search(
    q: u64,
    n: usize,
    report: Option<&str>,
    options: &SearchOptions,
) -> Result<Document<SearchInputs, SearchResults>, isospectral::SearchError> {
    let buckets = isospectral::search_pairs(q, n, options)?;
    let prefix_len = (2 * q) as usize;
    let out = buckets
        .iter()
        .enumerate()
        .map(|(bucket_id, b)| BucketOut {
            bucket_id,
            members: b.members.iter().map(|l| l.to_string()).collect(),
            shell_prefix: b.shell_vector[..prefix_len.min(b.shell_vector.len())].to_vec(),
        })
        .collect::<Vec<_>>();
    Ok(document(
        "search",
        SearchInputs {
            q,
            n,
            report: report.map(str::to_string),
        },
        SearchResults {
            bucket_count: out.len(),
            buckets: out,
            csv_path: report.map(str::to_string),
        },
    ))
}

/// CSV rows for the search report: one line per bucket member.
pub fn search_csv(doc: &Document<SearchInputs, SearchResults>) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(["bucket_id", "q", "n", "p_canonical", "shell_vector_prefix"])
        .expect("csv record");
    for bucket in &doc.results.buckets {
        for member in &bucket.members {
            let p = member.split_once(':').map(|(_, p)| p).unwrap_or(member);
            let prefix = bucket
                .shell_prefix
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(";");
            w.write_record([
                bucket.bucket_id.to_string(),
                doc.inputs.q.to_string(),
                doc.inputs.n.to_string(),
                p.to_string(),
                prefix,
            ])
            .expect("csv record");
        }
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv is utf8")
}

pub fn render_search(doc: &Document<SearchInputs, SearchResults>, format: Format) -> String {
    match format {
        Format::Json => to_json(doc),
        Format::Csv => search_csv(doc),
        Format::Plain => {
            let mut s = format!(
                "search q = {}, n = {}: {} bucket(s)\n",
                doc.inputs.q, doc.inputs.n, doc.results.bucket_count
            );
            for b in &doc.results.buckets {
                let _ = writeln!(s, "bucket {}: {}", b.bucket_id, b.members.join(" ~ "));
            }
            s
        }
    }
}

pub fn cmd_invariants(
    lens: &LensSpace,
    max_k: u64,
) -> Result<Document<InvariantsInputs, InvariantsResults>, lensform_core::LatticeError> {
    let lat = CongruenceLattice::new(lens);
    let dual = lat.dual_basis()?;
    let sd = lat.stanley_data()?;
    let series = counting::stanley_series(&sd);
    let verify = counting::verify_series(&lat, max_k)?;
    let mismatch = |m: &Option<counting::SeriesMismatch>| {
        m.as_ref().map(|m| MismatchOut {
            k: m.k,
            series: m.series_coefficient.to_string(),
            count: m.direct_count,
        })
    };
    Ok(document(
        "invariants",
        InvariantsInputs {
            lens: LensEcho::new(lens),
            max_k,
        },
        InvariantsResults {
            basis_rows: lat.basis_rows().to_vec(),
            det: lat.det(),
            smith: lat.smith_invariants(),
            dual_vectors: dual
                .vectors
                .iter()
                .map(|u| u.iter().map(ratio_string).collect())
                .collect(),
            l: dual.l,
            s: sd.s,
            points: sd
                .points
                .iter()
                .map(|p| PointOut {
                    coords: p.coords.clone(),
                    height: p.height,
                })
                .collect(),
            series_numerator_exponents: series.numerator_exponents,
            series_denominator_exponents: series.denominator_exponents,
            verify: VerifyOut {
                k_max: verify.k_max,
                simplex_mismatch: mismatch(&verify.simplex_mismatch),
                ball_mismatch: mismatch(&verify.ball_mismatch),
            },
        },
    ))
}

pub fn render_invariants(
    doc: &Document<InvariantsInputs, InvariantsResults>,
    format: Format,
) -> String {
    match format {
        Format::Json => to_json(doc),
        Format::Csv => {
            let r = &doc.results;
            let mut s = String::from("key,value\n");
            let _ = writeln!(s, "lens,{}", doc.inputs.lens.lens);
            let _ = writeln!(s, "det,{}", r.det);
            let _ = writeln!(s, "smith,{}", join(&r.smith, ";"));
            let _ = writeln!(s, "l,{}", join(&r.l, ";"));
            let _ = writeln!(s, "s,{}", r.s);
            let _ = writeln!(s, "points,{}", r.points.len());
            s
        }
        Format::Plain => {
            let r = &doc.results;
            let mut s = format!("invariants of {}\n", doc.inputs.lens.lens);
            let _ = writeln!(s, "basis rows: {:?}", r.basis_rows);
            let _ = writeln!(s, "det: {}", r.det);
            let _ = writeln!(s, "smith: {:?}", r.smith);
            let _ = writeln!(s, "dual vectors: {:?}", r.dual_vectors);
            let _ = writeln!(s, "l: {:?}", r.l);
            let _ = writeln!(s, "s: {} ({} parallelepiped points)", r.s, r.points.len());
            for p in &r.points {
                let _ = writeln!(s, "  point {:?} at height {}", p.coords, p.height);
            }
            let _ = writeln!(
                s,
                "series: numerator exponents {:?}, denominator exponents {:?}",
                r.series_numerator_exponents, r.series_denominator_exponents
            );
            match &r.verify.simplex_mismatch {
                None => {
                    let _ = writeln!(
                        s,
                        "series vs simplex count: agree through k = {}",
                        r.verify.k_max
                    );
                }
                Some(m) => {
                    let _ = writeln!(
                        s,
                        "series vs simplex count: first mismatch at k = {} ({} vs {})",
                        m.k, m.series, m.count
                    );
                }
            }
            match &r.verify.ball_mismatch {
                None => {
                    let _ = writeln!(
                        s,
                        "series vs ball count: agree through k = {}",
                        r.verify.k_max
                    );
                }
                Some(m) => {
                    let _ = writeln!(
                        s,
                        "series vs ball count: first mismatch at k = {} ({} vs {})",
                        m.k, m.series, m.count
                    );
                }
            }
            s
        }
    }
}

pub fn cmd_toric(lens: &LensSpace, max_k: u64) -> Document<ToricInputs, ToricResults> {
    let polytope = toric::lens_polytope(lens);
    let coeffs = toric::ehrhart_polynomial_of_qp(lens).expect("polynomial fit is exact");
    document(
        "toric",
        ToricInputs {
            lens: LensEcho::new(lens),
            max_k,
        },
        ToricResults {
            vertices: polytope.vertices,
            dilate_factor: polytope.dilate_factor,
            fundamental_volume: toric::fundamental_volume(lens),
            ehrhart_coefficients: coeffs.iter().map(ratio_string).collect(),
            boundary_invariant: ratio_string(&coeffs[lens.n() - 1]),
            toric_degree: toric::toric_degree(lens),
            h0: (1..=max_k).map(|k| toric::h0_dim(lens, k)).collect(),
        },
    )
}

pub fn render_toric(doc: &Document<ToricInputs, ToricResults>, format: Format) -> String {
    match format {
        Format::Json => to_json(doc),
        Format::Csv => {
            let r = &doc.results;
            let mut s = String::from("key,value\n");
            let _ = writeln!(s, "lens,{}", doc.inputs.lens.lens);
            let _ = writeln!(s, "fundamental_volume,{}", r.fundamental_volume);
            let _ = writeln!(s, "boundary_invariant,{}", r.boundary_invariant);
            let _ = writeln!(s, "toric_degree,{}", r.toric_degree);
            let _ = writeln!(s, "h0,{}", join(&r.h0, ";"));
            s
        }
        Format::Plain => {
            let r = &doc.results;
            let mut s = format!("toric data of {}\n", doc.inputs.lens.lens);
            let _ = writeln!(s, "polytope vertices: {:?}", r.vertices);
            let _ = writeln!(s, "very-ample dilate: {}", r.dilate_factor);
            let _ = writeln!(s, "fundamental volume: {}", r.fundamental_volume);
            let _ = writeln!(
                s,
                "ehrhart coefficients of qP: {:?}",
                r.ehrhart_coefficients
            );
            let _ = writeln!(s, "boundary invariant: {}", r.boundary_invariant);
            let _ = writeln!(s, "toric degree: {}", r.toric_degree);
            let _ = writeln!(s, "h0 for k = 1..{}: {:?}", doc.inputs.max_k, r.h0);
            s
        }
    }
}

pub fn cmd_oracle(
    lens: &LensSpace,
    k: u64,
) -> Result<Document<OracleInputs, OracleResults>, lensform_core::OracleError> {
    let harmonic_dim = harmonic::invariant_harmonic_dim(lens, k)?;
    let columns = harmonic::invariant_monomials(lens, k);
    let rows = if k >= 2 {
        harmonic::invariant_monomials(lens, k - 2)
    } else {
        Vec::new()
    };
    let rank = columns.len() - harmonic_dim as usize;
    let formula = spectrum::multiplicity(lens, k);
    Ok(document(
        "oracle",
        OracleInputs {
            lens: LensEcho::new(lens),
            k,
        },
        OracleResults {
            invariant_monomials: columns.len(),
            image_monomials: rows.len(),
            laplacian_rank: rank,
            harmonic_dim: harmonic_dim.to_string(),
            formula_multiplicity: formula.to_string(),
            agree: harmonic_dim == formula,
        },
    ))
}

pub fn render_oracle(doc: &Document<OracleInputs, OracleResults>, format: Format) -> String {
    match format {
        Format::Json => to_json(doc),
        Format::Csv => {
            let r = &doc.results;
            let mut s = String::from("key,value\n");
            let _ = writeln!(s, "lens,{}", doc.inputs.lens.lens);
            let _ = writeln!(s, "k,{}", doc.inputs.k);
            let _ = writeln!(s, "harmonic_dim,{}", r.harmonic_dim);
            let _ = writeln!(s, "formula_multiplicity,{}", r.formula_multiplicity);
            let _ = writeln!(s, "agree,{}", r.agree);
            s
        }
        Format::Plain => {
            let r = &doc.results;
            let mut s = format!(
                "oracle check of {} at k = {}\n",
                doc.inputs.lens.lens, doc.inputs.k
            );
            let _ = writeln!(s, "invariant monomials: {}", r.invariant_monomials);
            let _ = writeln!(s, "image monomials: {}", r.image_monomials);
            let _ = writeln!(s, "laplacian rank: {}", r.laplacian_rank);
            let _ = writeln!(s, "harmonic kernel dimension: {}", r.harmonic_dim);
            let _ = writeln!(s, "formula multiplicity: {}", r.formula_multiplicity);
            let _ = writeln!(s, "agree: {}", r.agree);
            s
        }
    }
}

fn join<T: ToString>(values: &[T], sep: &str) -> String {
    values
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}
