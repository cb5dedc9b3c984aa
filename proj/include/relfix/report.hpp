#pragma once

#include <span>
#include <string>
#include <utility>

#include "relfix/instance.hpp"
#include "relfix/solver.hpp"
#include "relfix/urysohn.hpp"
#include "relfix/verifier.hpp"

namespace relfix {

enum class ReportFormat { text, machine };

/// Text: aligned hypothesis table plus conclusion. Machine: one verdict per
/// line "id<TAB>status<TAB>witness".
std::string render_verification(const VerificationReport& report, const FiniteMetricSpace& space,
                                const std::string& digest, ReportFormat format);

/// Ordered records (step, x-label, gx-label, residual, bound); the bound
/// column appears when phi^n(d0) values are supplied.
std::string render_trace(const IterationTrace& trace, const FiniteMetricSpace& space,
                         const MappingPair& pair, ReportFormat format,
                         std::span<const std::pair<double, double>> observed_vs_bound = {});

std::string render_certificate(const Certificate& certificate, const FiniteMetricSpace& space);

std::string render_h_report(const HConditionReport& report, ReportFormat format);

}  // namespace relfix
