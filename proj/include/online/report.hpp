#pragma once

#include "online/rational.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace online {

/// One row of the CSV schema shared by every experiment:
/// kind,n,d_or_k,online_cost,offline_cost,ratio,seed
struct ReportRow {
    std::string kind;
    std::size_t n = 0;
    std::string d_or_k;
    Rational online_cost;
    Rational offline_cost;
    std::optional<Rational> ratio; ///< empty when the offline cost is zero
    std::uint64_t seed = 0;
};

inline constexpr const char* kReportHeader = "kind,n,d_or_k,online_cost,offline_cost,ratio,seed";

/// Fills `ratio` from the costs (online / offline) unless offline is zero.
ReportRow with_ratio(ReportRow row);

void write_report_header(std::ostream& out);
void write_report_row(std::ostream& out, const ReportRow& row);

} // namespace online
