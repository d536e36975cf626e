#include "sofic/reports.hpp"

#include <ostream>

namespace sofic {

namespace {

std::string or_skipped(const std::optional<Rational>& q) { return q ? to_string(*q) : "skipped"; }

}  // namespace

void write_defect_report(std::ostream& out, const SoficApproximation& approx,
                         const DefectReport& report) {
  const Group& g = approx.group();
  out << "approximation " << approx.label() << '\n';
  out << "group " << g.name() << '\n';
  out << "vertices " << approx.v_size() << '\n';
  out << "elements " << report.element_count << '\n';
  out << "epsilon " << to_string(approx.epsilon()) << '\n';
  out << "max_a " << to_string(report.max_a) << '\n';
  out << "defect_b " << to_string(report.defect_b) << '\n';
  out << "max_agreement_c " << to_string(report.max_c) << '\n';
  out << "excluded_pairs " << report.excluded_pairs << '\n';
  out << "satisfies_epsilon " << (report.satisfies(approx.epsilon()) ? "yes" : "no") << '\n';
  out << "# e f ef disagreement\n";
  const auto& elems = approx.elements();
  for (const auto& pair : report.pairs) {
    out << g.format(elems[pair.e]) << ' ' << g.format(elems[pair.f]) << ' '
        << g.format(pair.product) << ' '
        << (pair.fraction ? to_string(*pair.fraction) : "excluded") << '\n';
  }
  out << "# e agreement_with_identity\n";
  for (const auto& c : report.defect_c) {
    out << g.format(elems[c.index]) << ' ' << to_string(c.agreement) << '\n';
  }
}

void write_defect_csv_row(std::ostream& out, std::size_t level, const SoficApproximation& approx,
                          const DefectReport& report) {
  out << level << ',' << approx.v_size() << ',' << to_string(report.max_a) << ','
      << to_string(report.defect_b) << ',' << to_string(report.max_c) << '\n';
}

void write_rank_csv(std::ostream& out, const RankSequence& seq) {
  out << "level,vertices,value\n";
  for (const auto& l : seq.levels) {
    out << l.level << ',' << l.vertices << ',' << or_skipped(l.value) << '\n';
  }
}

void write_rank_summary(std::ostream& out, const RankSequence& seq, std::uint64_t seed) {
  out << "element " << seq.element << '\n';
  out << "seed " << seed << '\n';
  out << "levels " << seq.levels.size() << '\n';
  out << "warnings " << seq.warning_count() << '\n';
  out << "last " << or_skipped(seq.last()) << '\n';
  out << "tail_min " << or_skipped(seq.tail_min()) << '\n';
  out << "tail_max " << or_skipped(seq.tail_max()) << '\n';
  for (const auto& l : seq.levels) {
    out << "level " << l.level << " [" << l.label << "] " << or_skipped(l.value);
    if (!l.warning.empty()) out << " warning: " << l.warning;
    out << '\n';
  }
}

void write_verdict_csv(std::ostream& out, const FinitenessVerdict& verdict) {
  out << "level,vertices,rank_ab_minus_1,rank_ba_minus_1,exact\n";
  for (const auto& l : verdict.levels) {
    out << l.level << ',' << l.vertices << ',' << or_skipped(l.rank_ab) << ','
        << or_skipped(l.rank_ba) << ',' << (l.exact ? "yes" : "no") << '\n';
  }
}

void write_verdict_summary(std::ostream& out, const FinitenessVerdict& verdict,
                           std::uint64_t seed) {
  out << "a " << verdict.a << '\n';
  out << "b " << verdict.b << '\n';
  out << "seed " << seed << '\n';
  out << "ab_is_one " << (verdict.ab_is_one ? "true" : "false") << '\n';
  out << "ba_is_one " << (verdict.ba_is_one ? "true" : "false") << '\n';
  out << "counterexample " << (verdict.counterexample() ? "true" : "false") << '\n';
  out << "levels_corroborate " << (verdict.corroborated() ? "true" : "false") << '\n';
  for (const auto& l : verdict.levels) {
    if (!l.warning.empty()) out << "warning level " << l.level << ": " << l.warning << '\n';
  }
}

void write_axioms_report(std::ostream& out, const AxiomsReport& r) {
  out << "prime " << r.prime << '\n';
  out << "n " << r.n << '\n';
  out << "trials " << r.trials << '\n';
  out << "seed " << r.seed << '\n';
  out << "normalized " << r.checks_normalized << " checks " << r.violations_normalized
      << " violations\n";
  out << "submultiplicative " << r.checks_product << " checks " << r.violations_product
      << " violations\n";
  out << "additive " << r.checks_additive << " checks " << r.violations_additive
      << " violations\n";
  out << "total_violations " << r.violations() << '\n';
}

void write_regularity_report(std::ostream& out, const RegularityReport& r) {
  out << "prime " << r.prime << '\n';
  out << "n " << r.n << '\n';
  out << "trials " << r.trials << '\n';
  out << "seed " << r.seed << '\n';
  out << "verified " << r.verified << '/' << r.trials << '\n';
}

void write_threshold_report(std::ostream& out, const Group& group, int r, const Rational& delta,
                            const GoodSet& good, std::size_t v_size) {
  const std::size_t nr = ball(group, r).size();
  const std::size_t nr1 = ball(group, r + 1).size();
  const std::size_t b = group.generators().size();
  out << "radius " << r << '\n';
  out << "delta " << to_string(delta) << '\n';
  out << "ball_r " << nr << '\n';
  out << "ball_r_plus_1 " << nr1 << '\n';
  out << "generators " << b << '\n';
  out << "epsilon_threshold " << to_string(epsilon_threshold(delta, nr1, nr, b)) << '\n';
  out << "good_vertices " << good.vertices.size() << '/' << v_size << '\n';
  out << "measured_delta " << to_string(good.delta) << '\n';
  out << "meets_delta " << (good.delta <= delta ? "yes" : "no") << '\n';
}

}  // namespace sofic
