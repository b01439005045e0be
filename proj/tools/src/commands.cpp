#include "flagcurv/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flagcurv/classify.hpp"

namespace flagcurv::cli {

namespace {

Json vec(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Json tolerance_json(const Tolerances& t) {
  Json j = Json::object();
  j["structural"] = t.structural;
  j["comparison"] = t.comparison;
  j["finite_difference"] = t.finite_difference;
  j["jacobi"] = t.jacobi;
  j["rank"] = t.rank;
  j["positive_definite"] = t.positive_definite;
  j["gram_schmidt"] = t.gram_schmidt;
  j["predicate"] = t.predicate;
  j["constancy"] = t.constancy;
  j["fd_step"] = t.fd_step;
  j["non_riemannian"] = t.non_riemannian;
  return j;
}

Record header(const Problem& p, const std::string& command) {
  Record r{"run", Json::object()};
  r.fields["tool_version"] = kToolVersion;
  r.fields["command"] = command;
  r.fields["problem"] = p.name;
  r.fields["input_digest"] = p.digest;
  r.fields["dim"] = p.space().dim();
  r.fields["tangent_dim"] = p.space().tangent_dim();
  r.fields["tolerances"] = tolerance_json(p.space().tolerances());
  return r;
}

// value with the tolerance it was judged against
Json judged(double value, double tol) {
  Json j = Json::object();
  j["value"] = value;
  j["tolerance"] = tol;
  j["pass"] = std::abs(value) <= tol;
  return j;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

struct Accumulator {
  Accumulator(std::string f, double tol) : formula(std::move(f)), tolerance(tol) {}

  std::string formula;
  double tolerance = 0.0;
  int count = 0;
  double max = 0.0;
  double sum = 0.0;
  std::string skipped;

  void add(double d) {
    ++count;
    max = std::max(max, d);
    sum += d;
  }
  Record record() const {
    Record r{"discrepancy", Json::object()};
    r.fields["formula"] = formula;
    r.fields["count"] = count;
    r.fields["max"] = max;
    r.fields["mean"] = count ? sum / count : 0.0;
    r.fields["tolerance"] = tolerance;
    r.fields["within_tolerance"] = count > 0 && max <= tolerance;
    if (!skipped.empty()) r.fields["skipped"] = skipped;
    return r;
  }
};

}  // namespace

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Input:
    case ErrorKind::Degeneracy:
      return 1;
    case ErrorKind::Usage:
      return 2;
    case ErrorKind::Numerical:
      return 3;
  }
  return 3;
}

std::string cmd_validate(const Problem& p, Format format) {
  const HomogeneousSpace& s = p.space();
  const SpaceValidation& v = s.validation();
  const Tolerances& t = s.tolerances();
  std::vector<Record> out{header(p, "validate")};

  Record alg{"algebra", Json::object()};
  alg.fields["antisymmetry_defect"] = judged(v.algebra.antisymmetry_defect, v.algebra.tolerance);
  alg.fields["jacobi_defect"] = judged(v.algebra.jacobi_defect, v.algebra.tolerance);
  alg.fields["abelian"] = s.algebra().is_abelian();
  alg.fields["perfect"] = is_perfect(s.algebra(), t.rank);
  out.push_back(alg);

  Record met{"metric", Json::object()};
  met.fields["g0_bi_invariance_defect"] = judged(v.g0_bi_invariance_defect, t.predicate);
  met.fields["phi_identity_defect"] = s.metric().phi_identity_defect();
  met.fields["min_metric_eigenvalue"] = linalg::min_eigenvalue(s.metric().inner_matrix());
  met.fields["phi_split_defect"] = judged(v.phi_split_defect, t.structural);
  met.fields["ad_h_invariance_defect"] = judged(v.ad_h_invariance_defect, t.structural);
  out.push_back(met);

  if (v.reductive) {
    const ReductiveReport& r = *v.reductive;
    Record red{"reductive", Json::object()};
    red.fields["subalgebra_defect"] = judged(r.subalgebra_defect, r.tolerance);
    red.fields["orthogonality_defect"] = judged(r.orthogonality_defect, r.tolerance);
    red.fields["reductivity_defect"] = judged(r.reductivity_defect, r.tolerance);
    red.fields["idempotency_defect"] = judged(r.idempotency_defect, r.tolerance);
    red.fields["self_adjoint_defect"] = judged(r.self_adjoint_defect, r.tolerance);
    out.push_back(red);
  }

  Record geo{"connection", Json::object()};
  geo.fields["kind"] = s.is_lie_group() ? "koszul" : "nomizu";
  geo.fields["torsion_defect"] = judged(v.connection.torsion, t.structural);
  geo.fields["compatibility_defect"] = judged(v.connection.compatibility, t.structural);
  geo.fields["antisymmetry_first_pair"] = judged(v.curvature.antisymmetry_first_pair, t.comparison);
  geo.fields["antisymmetry_second_pair"] = judged(v.curvature.antisymmetry_second_pair, t.comparison);
  geo.fields["pair_symmetry"] = judged(v.curvature.pair_symmetry, t.comparison);
  geo.fields["bianchi"] = judged(v.curvature.bianchi, t.comparison);
  out.push_back(geo);

  const RandersStructure& rs = p.structure();
  Record rnd{"randers", Json::object()};
  rnd.fields["drift"] = vec(rs.drift());
  rnd.fields["drift_norm"] = rs.norm_bound();
  rnd.fields["strong_convexity_margin"] = rs.strong_convexity_margin();
  rnd.fields["riemannian"] = rs.is_riemannian();
  rnd.fields["drift_parallel_defect"] = judged(rs.drift_parallel_defect(), t.predicate);
  rnd.fields["berwald"] = rs.is_berwald();
  out.push_back(rnd);

  Record status{"status", Json::object()};
  status.fields["valid"] = true;
  out.push_back(status);
  return render(out, format);
}

std::string cmd_flag(const Problem& p, const Vector& y, const Vector& u, Format format) {
  const RandersStructure& rs = p.structure();
  const HomogeneousSpace& s = p.space();
  const Tolerances& t = s.tolerances();
  const Flag f = make_flag(s, y, u);
  const FlagReport rep = flag_curvature_printed(rs, f);

  std::vector<Record> out{header(p, "flag")};
  Record fl{"flag", Json::object()};
  fl.fields["y_input"] = vec(y);
  fl.fields["u_input"] = vec(u);
  fl.fields["y"] = vec(f.y);
  fl.fields["u"] = vec(f.u);
  fl.fields["x_dot_y"] = rep.xy;
  fl.fields["x_dot_u"] = rep.xu;
  out.push_back(fl);

  Record k{"flag_curvature", Json::object()};
  k.fields["k_oracle"] = optional_number(rep.k_oracle);
  if (!rep.k_oracle) k.fields["oracle_note"] = "drift is not parallel; oracle needs Berwald type";
  k.fields["k_printed"] = rep.k_printed;
  k.fields["k_printed_signed"] = rep.k_printed_signed;
  k.fields["k_corrected"] = rep.k_corrected;
  k.fields["discrepancy"] = optional_number(rep.discrepancy);
  k.fields["corrected_discrepancy"] =
      rep.k_oracle ? Json(std::abs(rep.k_corrected - *rep.k_oracle)) : Json(nullptr);
  k.fields["tolerance"] = t.comparison;
  out.push_back(k);

  Record b{"blocks", Json::object()};
  b.fields["alpha"] = rep.alpha;
  b.fields["alpha_oracle"] = rep.alpha_oracle;
  b.fields["gamma"] = rep.gamma;
  b.fields["gamma_statement"] = rep.gamma_statement;
  b.fields["gamma_oracle"] = rep.gamma_oracle;
  b.fields["theta"] = judged(rep.theta, t.comparison);
  b.fields["det_fundamental"] = rep.det_fundamental;
  b.fields["det_printed"] = rep.det_printed;
  b.fields["det_gap"] = std::abs(rep.det_fundamental - rep.det_printed);
  out.push_back(b);
  return render(out, format);
}

std::string cmd_scan(const Problem& p, int n, std::uint64_t seed, Format format, unsigned threads) {
  const ScanStatistics st = scan_flags(p.structure(), n, seed, threads);
  std::vector<Record> out{header(p, "scan")};
  Record r{"scan", Json::object()};
  r.fields["n"] = st.n;
  r.fields["seed"] = st.seed;
  r.fields["min"] = st.min;
  r.fields["max"] = st.max;
  r.fields["mean"] = st.mean;
  r.fields["spread"] = st.max - st.min;
  r.fields["worst_discrepancy"] = st.worst_discrepancy;
  r.fields["histogram_lo"] = st.histogram_lo;
  r.fields["histogram_hi"] = st.histogram_hi;
  r.fields["histogram"] = st.histogram;
  out.push_back(r);
  return render(out, format);
}

namespace {

Record ys_record(const YSReport& rep) {
  Record r{"ys_check", Json::object()};
  r.fields["case"] = to_string(rep.case_label);
  r.fields["k"] = rep.k;
  r.fields["index_convention"] = rep.index_convention;
  r.fields["beta"] = vec(rep.beta_components);
  if (rep.case_label == YSCase::Negative) {
    r.fields["sigma"] = rep.sigma;
    r.fields["sigma_residual"] = rep.sigma_residual;
  }
  r.fields["verdict"] = rep.verdict ? "PASS" : "FAIL";
  r.fields["failing"] = rep.failing();
  return r;
}

std::vector<Record> bullet_records(const std::vector<Bullet>& bullets) {
  std::vector<Record> out;
  for (const auto& b : bullets) {
    Record r{"bullet", Json::object()};
    r.fields["name"] = b.name;
    r.fields["value"] = b.value;
    r.fields["tolerance"] = b.tolerance;
    r.fields["pass"] = b.pass;
    out.push_back(r);
  }
  return out;
}

double require_k(const CheckOptions& opts, const std::string& predicate) {
  if (!opts.k) throw_usage(predicate + " needs --k");
  return *opts.k;
}

}  // namespace

std::string cmd_check(const Problem& p, const std::string& predicate, const CheckOptions& opts, Format format) {
  const RandersStructure& rs = p.structure();
  const HomogeneousSpace& s = p.space();
  const Tolerances& t = s.tolerances();
  std::vector<Record> out{header(p, "check " + predicate)};

  if (predicate == "berwald") {
    const BerwaldReport rep = berwald_report(rs);
    const Matrix par = parallel_space(s);
    Record r{"berwald", Json::object()};
    r.fields["is_berwald"] = rep.is_berwald;
    r.fields["non_riemannian"] = rep.non_riemannian;
    r.fields["parallel_defect"] = rep.parallel_defect;
    r.fields["skew_defect"] = rep.skew_defect;
    r.fields["derived_orthogonality_defect"] = rep.derived_orthogonality_defect;
    r.fields["implications_hold"] = rep.implications_hold;
    r.fields["tolerance"] = rep.tolerance;
    r.fields["parallel_space_dim"] = par.cols();
    Json basis = Json::array();
    for (Eigen::Index c = 0; c < par.cols(); ++c) basis.push_back(vec(par.col(c)));
    r.fields["parallel_space"] = basis;
    out.push_back(r);
  } else if (predicate == "perfect") {
    Record r{"perfect", Json::object()};
    r.fields["is_perfect"] = is_perfect(s.algebra(), t.rank);
    r.fields["derived_dim"] = derived_span(s.algebra(), t.rank).cols();
    r.fields["dim"] = s.dim();
    r.fields["tolerance"] = t.rank;
    out.push_back(r);
  } else if (predicate == "ys-positive" || predicate == "ys-negative" || predicate == "ys-zero") {
    YSReport rep;
    if (predicate == "ys-positive") rep = ys_positive_check(rs, require_k(opts, predicate));
    else if (predicate == "ys-negative") rep = ys_negative_check(rs, require_k(opts, predicate));
    else rep = ys_zero_check(rs);
    out.push_back(ys_record(rep));
    for (auto& b : bullet_records(rep.bullets)) out.push_back(std::move(b));
  } else if (predicate == "milnor") {
    const Vector x = opts.x.value_or(rs.drift());
    const MilnorReport rep = milnor_nonneg_check(s, x, opts.samples, opts.seed);
    Record r{"milnor", Json::object()};
    r.fields["x"] = vec(x);
    r.fields["samples"] = rep.samples;
    r.fields["min_sectional"] = rep.min_sectional;
    r.fields["equality_samples"] = rep.equality_samples;
    r.fields["characterization_mismatches"] = rep.characterization_mismatches;
    r.fields["image_dim"] = rep.image_rank;
    r.fields["nonnegative"] = rep.nonnegative;
    r.fields["equality_characterized"] = rep.equality_characterized;
    r.fields["tolerance"] = rep.tolerance;
    r.fields["verdict"] = rep.pass() ? "PASS" : "FAIL";
    out.push_back(r);
  } else if (predicate == "constant") {
    const ConstantCurvatureReport rep = constant_curvature_probe(rs, opts.samples, opts.seed, t.constancy);
    Record r{"constant_curvature", Json::object()};
    r.fields["is_constant"] = rep.is_constant;
    r.fields["k_estimate"] = rep.k_estimate;
    r.fields["spread"] = rep.spread;
    r.fields["tolerance"] = rep.tolerance;
    out.push_back(r);
  } else {
    throw_usage("unknown predicate \"" + predicate +
                "\" (expected berwald, perfect, ys-positive, ys-negative, ys-zero, milnor or constant)");
  }
  return render(out, format);
}

std::string cmd_compare(const Problem& p, int n, std::uint64_t seed, Format format, unsigned threads) {
  const RandersStructure& rs = p.structure();
  const HomogeneousSpace& s = p.space();
  const Tolerances& t = s.tolerances();
  const bool berwald = rs.is_berwald();
  const bool biinv = s.is_lie_group() && s.is_biinvariant() && berwald;
  const bool puttmann_ok = s.validation().g0_bi_invariance_defect <= t.predicate;

  const std::vector<Flag> flags = sample_flags(s, n, seed);
  struct Row {
    FlagReport rep;
    std::optional<FormulaPair> bi;
    std::optional<double> puttmann_gap;
  };
  std::vector<Row> rows(flags.size());
  parallel_for(n, threads, [&](int i) {
    Row& row = rows[static_cast<size_t>(i)];
    const Flag& f = flags[static_cast<size_t>(i)];
    row.rep = flag_curvature_printed(rs, f);
    if (biinv) row.bi = flag_curvature_biinvariant(rs, f);
    if (puttmann_ok) {
      const double printed = puttmann_printed(s.algebra(), s.metric(), s.split(), f.u, f.y, f.u, f.y);
      const double oracle =
          mapped_oracle(puttmann_slot_mapping(), s.connection(), s.algebra(), s.metric(), s.split(), {f.u, f.y, f.u, f.y});
      row.puttmann_gap = std::abs(printed - oracle);
    }
  });

  const std::string no_oracle = "drift is not parallel";
  Accumulator k_printed{"k_printed", t.comparison}, k_signed{"k_printed_signed", t.comparison},
      k_corr{"k_corrected", t.comparison}, gamma{"gamma_proof_form", t.comparison},
      gamma_st{"gamma_statement_form", t.comparison}, alpha{"alpha_block", t.comparison},
      det{"determinant_printed", t.comparison}, th{"theta", t.comparison},
      bi_p{"biinvariant_printed", t.comparison}, bi_c{"biinvariant_corrected", t.comparison},
      basis_p{"basis_printed", t.comparison}, basis_c{"basis_corrected", t.comparison},
      putt{"puttmann_mapped", t.comparison};

  for (const Row& row : rows) {
    const FlagReport& r = row.rep;
    gamma.add(std::abs(r.gamma - r.gamma_oracle));
    gamma_st.add(std::abs(r.gamma_statement - r.gamma_oracle));
    alpha.add(std::abs(r.alpha - r.alpha_oracle));
    det.add(std::abs(r.det_printed - r.det_fundamental));
    th.add(std::abs(r.theta));
    if (r.k_oracle) {
      k_printed.add(std::abs(r.k_printed - *r.k_oracle));
      k_signed.add(std::abs(r.k_printed_signed - *r.k_oracle));
      k_corr.add(std::abs(r.k_corrected - *r.k_oracle));
      if (row.bi) {
        bi_p.add(std::abs(row.bi->k_printed - *r.k_oracle));
        bi_c.add(std::abs(row.bi->k_corrected - *r.k_oracle));
      }
    }
    if (row.puttmann_gap) putt.add(*row.puttmann_gap);
  }
  if (!berwald) k_printed.skipped = k_signed.skipped = k_corr.skipped = no_oracle;
  if (!biinv) bi_p.skipped = bi_c.skipped = "needs a Lie group with bi-invariant metric and parallel drift";
  if (!puttmann_ok) putt.skipped = "g0 is not bi-invariant";

  if (s.is_lie_group() && berwald) {
    const int d = s.dim();
    const Matrix basis = s.metric().gram_schmidt(Matrix::Identity(d, d), InnerForm::Metric);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (i == j) continue;
        const Vector ei = basis.col(i), ej = basis.col(j);
        const double oracle = flag_curvature_oracle(rs, Flag{ei, ej});
        const FormulaPair fp = flag_curvature_basis(rs, i, j, basis);
        basis_p.add(std::abs(fp.k_printed - oracle));
        basis_c.add(std::abs(fp.k_corrected - oracle));
      }
  } else {
    basis_p.skipped = basis_c.skipped = s.is_lie_group() ? no_oracle : "homogeneous space";
  }

  std::vector<Record> out{header(p, "compare")};
  Record meta{"compare", Json::object()};
  meta.fields["n"] = n;
  meta.fields["seed"] = seed;
  meta.fields["berwald"] = berwald;
  meta.fields["basis_pairs"] = basis_p.count;
  out.push_back(meta);
  for (const Accumulator* a : {&k_printed, &k_signed, &k_corr, &gamma, &gamma_st, &alpha, &det, &th, &bi_p, &bi_c,
                               &basis_p, &basis_c, &putt})
    out.push_back(a->record());
  return render(out, format);
}

}  // namespace flagcurv::cli
