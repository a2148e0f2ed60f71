#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lact {

// Base of all typed errors. Carries the component that raised it so callers
// (notably the CLI) can report which part of the pipeline failed.
class Error : public std::runtime_error {
public:
  Error(std::string component, std::string kind, const std::string& msg)
      : std::runtime_error("[" + component + "] " + kind + ": " + msg),
        component_(std::move(component)),
        kind_(std::move(kind)) {}

  const std::string& component() const noexcept { return component_; }
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string component_;
  std::string kind_;
};

struct InvalidGeometry : Error {
  explicit InvalidGeometry(const std::string& m) : Error("tomo_core", "InvalidGeometry", m) {}
};

struct GeometryMismatch : Error {
  explicit GeometryMismatch(const std::string& m, const std::string& c = "tomo_core")
      : Error(c, "GeometryMismatch", m) {}
};

struct ShapeMismatch : Error {
  ShapeMismatch(const std::string& c, const std::string& m) : Error(c, "ShapeMismatch", m) {}
};

struct NonFinite : Error {
  NonFinite(const std::string& c, const std::string& m) : Error(c, "NonFinite", m) {}
};

struct OutOfRange : Error {
  OutOfRange(const std::string& c, const std::string& m) : Error(c, "OutOfRange", m) {}
};

struct IndexOutOfRange : Error {
  IndexOutOfRange(const std::string& c, const std::string& m) : Error(c, "IndexOutOfRange", m) {}
};

struct InvalidConfig : Error {
  InvalidConfig(const std::string& c, const std::string& m) : Error(c, "InvalidConfig", m) {}
};

struct InvalidPrior : Error {
  explicit InvalidPrior(const std::string& m) : Error("diffusion", "InvalidPrior", m) {}
};

struct NonNegligibleImaginary : Error {
  explicit NonNegligibleImaginary(const std::string& m)
      : Error("fusion", "NonNegligibleImaginary", m) {}
};

struct DegenerateHistogram : Error {
  explicit DegenerateHistogram(const std::string& m) : Error("metrics", "DegenerateHistogram", m) {}
};

struct ImageTooSmall : Error {
  explicit ImageTooSmall(const std::string& m) : Error("metrics", "ImageTooSmall", m) {}
};

struct BadMagic : Error {
  explicit BadMagic(const std::string& m) : Error("io", "BadMagic", m) {}
};

struct UnsupportedVersion : Error {
  explicit UnsupportedVersion(const std::string& m) : Error("io", "UnsupportedVersion", m) {}
};

struct TruncatedPayload : Error {
  explicit TruncatedPayload(const std::string& m) : Error("io", "TruncatedPayload", m) {}
};

struct KindMismatch : Error {
  explicit KindMismatch(const std::string& m) : Error("io", "KindMismatch", m) {}
};

struct IoFailure : Error {
  explicit IoFailure(const std::string& m) : Error("io", "IoFailure", m) {}
};

}  // namespace lact
