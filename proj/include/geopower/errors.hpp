#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geopower {

/// |a| fell below the usable threshold; a geometric frequency is undefined.
struct ZeroMagnitudeError : std::domain_error {
  using std::domain_error::domain_error;
};

/// |r| (or |xi|) is zero; radial and orbital quantities are undefined.
struct ZeroRadiusError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A Frenet frame was required but the sample is flagged degenerate.
struct DegenerateFrameError : std::domain_error {
  using std::domain_error::domain_error;
};

struct InsufficientSamplesError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EmptySystemError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Point sampling is not defined for series-backed (CSV) scenarios.
struct CsvVariantRequiresSeriesError : std::logic_error {
  using std::logic_error::logic_error;
};

struct CsvParseError : std::runtime_error {
  std::size_t line;
  CsvParseError(std::size_t line_number, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
        line(line_number) {}
};

struct NonUniformTimestepError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TooShortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace geopower
