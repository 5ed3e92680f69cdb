#include "online/report.hpp"

namespace online {

ReportRow with_ratio(ReportRow row) {
    if (row.offline_cost != 0) {
        row.ratio = Rational(row.online_cost / row.offline_cost);
    } else {
        row.ratio.reset();
    }
    return row;
}

void write_report_header(std::ostream& out) {
    out << kReportHeader << '\n';
}

void write_report_row(std::ostream& out, const ReportRow& row) {
    out << row.kind << ',' << row.n << ',' << row.d_or_k << ',' << to_string(row.online_cost) << ','
        << to_string(row.offline_cost) << ',' << (row.ratio ? to_string(*row.ratio) : std::string("NA")) << ','
        << row.seed << '\n';
}

} // namespace online
