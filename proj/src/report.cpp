#include "relfix/report.hpp"

#include <iomanip>
#include <sstream>

namespace relfix {

namespace {

std::string label_list(const std::vector<std::size_t>& points, const FiniteMetricSpace& space) {
  std::string out = "{";
  for (std::size_t i = 0; i < points.size(); ++i)
    out += (i ? ", " : "") + space.label(points[i]);
  return out + "}";
}

void machine_line(std::ostringstream& os, const HypothesisVerdict& v) {
  os << v.id << '\t' << to_string(v.status) << '\t' << v.witness << '\n';
}

}  // namespace

std::string render_verification(const VerificationReport& report, const FiniteMetricSpace& space,
                                const std::string& digest, ReportFormat format) {
  std::ostringstream os;
  if (format == ReportFormat::machine) {
    for (const auto& v : report.verdicts) machine_line(os, v);
    os << "rank\t" << to_string(report.rank) << "\t\n";
    os << "cross-check\t" << (report.cross_check_ok ? "ok" : "defect") << '\t'
       << report.cross_check_note << '\n';
    return os.str();
  }
  os << "instance digest: " << digest << '\n';
  os << std::left;
  for (const auto& v : report.verdicts) {
    os << "  " << std::setw(16) << v.id << std::setw(10) << to_string(v.status);
    if (!v.witness.empty()) os << " witness " << v.witness << " ";
    if (!v.detail.empty()) os << " " << v.detail;
    os << '\n';
  }
  os << "coincidence points C(T,g) = " << label_list(report.brute.coincidence_points, space)
     << '\n';
  os << "points of coincidence     = " << label_list(report.brute.points_of_coincidence, space)
     << '\n';
  os << "common fixed points       = " << label_list(report.brute.common_fixed_points, space)
     << '\n';
  os << "conclusion rank: " << to_string(report.rank) << '\n';
  if (!report.cross_check_ok) os << "CROSS-CHECK DEFECT: " << report.cross_check_note << '\n';
  return os.str();
}

std::string render_trace(const IterationTrace& trace, const FiniteMetricSpace& space,
                         const MappingPair& pair, ReportFormat format,
                         std::span<const std::pair<double, double>> observed_vs_bound) {
  std::ostringstream os;
  if (format == ReportFormat::machine) {
    for (std::size_t n = 0; n < trace.points.size(); ++n) {
      const std::size_t x = trace.points[n];
      os << n << '\t' << space.label(x) << '\t' << space.label(pair.g_of(x)) << '\t';
      if (n < trace.residuals.size())
        os << std::setprecision(17) << trace.residuals[n];
      os << '\t';
      if (n < observed_vs_bound.size())
        os << std::setprecision(17) << observed_vs_bound[n].second;
      os << '\n';
    }
    return os.str();
  }
  os << "step  x          gx         residual d(gx, Tx)   bound phi^n(d0)\n";
  for (std::size_t n = 0; n < trace.points.size(); ++n) {
    const std::size_t x = trace.points[n];
    os << "  " << std::left << std::setw(4) << n << std::setw(11) << space.label(x)
       << std::setw(11) << space.label(pair.g_of(x));
    if (n < trace.residuals.size())
      os << std::setw(21) << std::setprecision(12) << trace.residuals[n];
    if (n < observed_vs_bound.size())
      os << std::setprecision(12) << observed_vs_bound[n].second;
    os << '\n';
  }
  return os.str();
}

std::string render_certificate(const Certificate& certificate, const FiniteMetricSpace& space) {
  std::ostringstream os;
  switch (certificate.kind) {
    case CertificateKind::coincidence:
      os << "coincidence point";
      break;
    case CertificateKind::point_of_coincidence:
      os << "point of coincidence";
      break;
    case CertificateKind::common_fixed_point:
      os << "common fixed point";
      break;
    case CertificateKind::violation:
      os << "violation";
      break;
  }
  os << ": " << label_list(certificate.points, space);
  os << " (residual " << std::setprecision(12) << certificate.residual << ")";
  if (!certificate.evidence.empty()) os << " -- " << certificate.evidence;
  os << '\n';
  return os.str();
}

std::string render_h_report(const HConditionReport& report, ReportFormat format) {
  std::ostringstream os;
  if (format == ReportFormat::machine) {
    for (const auto& v : report.verdicts) machine_line(os, v);
    return os.str();
  }
  os << std::left;
  for (const auto& v : report.verdicts) {
    os << "  " << std::setw(6) << v.id << std::setw(10) << to_string(v.status);
    if (!v.witness.empty()) os << " witness " << v.witness;
    if (!v.detail.empty()) os << " " << v.detail;
    os << '\n';
  }
  return os.str();
}

}  // namespace relfix
