#ifndef SOFIC_REPORTS_HPP
#define SOFIC_REPORTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "sofic/bridge.hpp"
#include "sofic/rank_function.hpp"
#include "sofic/sofic_approx.hpp"

namespace sofic {

// Plain-text and CSV renderings. Rationals are always written as "num/den"
// and nothing time dependent is emitted, so equal inputs give equal bytes.

/// Header and per-pair table of one approximation's defects.
void write_defect_report(std::ostream& out, const SoficApproximation& approx,
                         const DefectReport& report);

inline constexpr const char* kDefectCsvHeader = "level,vertices,max_a,defect_b,max_agreement_c";
void write_defect_csv_row(std::ostream& out, std::size_t level, const SoficApproximation& approx,
                          const DefectReport& report);

/// "level,vertices,value"; skipped levels carry the value "skipped".
void write_rank_csv(std::ostream& out, const RankSequence& seq);
void write_rank_summary(std::ostream& out, const RankSequence& seq, std::uint64_t seed);

/// "level,vertices,rank_ab_minus_1,rank_ba_minus_1,exact".
void write_verdict_csv(std::ostream& out, const FinitenessVerdict& verdict);
void write_verdict_summary(std::ostream& out, const FinitenessVerdict& verdict,
                           std::uint64_t seed);

void write_axioms_report(std::ostream& out, const AxiomsReport& report);
void write_regularity_report(std::ostream& out, const RegularityReport& report);

/// The epsilon threshold for (r, delta) together with the measured good set.
void write_threshold_report(std::ostream& out, const Group& group, int r, const Rational& delta,
                            const GoodSet& good, std::size_t v_size);

}  // namespace sofic

#endif  // SOFIC_REPORTS_HPP
