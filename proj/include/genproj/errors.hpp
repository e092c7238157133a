#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace genproj {

/// One failed or advisory constraint on a named parameter.
struct ParamIssue
{
    std::string param;
    std::string text;

    bool operator==(const ParamIssue&) const = default;
};

/// Outcome of parameter validation. Violations make construction fail;
/// warnings are advisory only.
struct ValidationReport
{
    std::vector<ParamIssue> violations;
    std::vector<ParamIssue> warnings;

    bool ok() const { return violations.empty(); }
};

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class InvalidParams : public Error
{
public:
    explicit InvalidParams(ValidationReport report)
        : Error(describe(report)), report_(std::move(report))
    {
    }

    explicit InvalidParams(std::string param, std::string text)
        : InvalidParams(ValidationReport{{{std::move(param), std::move(text)}}, {}})
    {
    }

    const ValidationReport& report() const noexcept { return report_; }

private:
    static std::string describe(const ValidationReport& report)
    {
        std::string msg = "invalid projection parameters";
        for (const auto& v : report.violations)
            msg += "; " + v.param + ": " + v.text;
        return msg;
    }

    ValidationReport report_;
};

/// Matrix is not invertible (|det| below threshold).
class Singular : public Error
{
public:
    Singular() : Error("matrix is singular") {}
};

/// Clip-space w too close to zero for the perspective divide.
class DegenerateW : public Error
{
public:
    DegenerateW() : Error("clip-space w is degenerate") {}
};

} // namespace genproj
