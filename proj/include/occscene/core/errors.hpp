// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace occscene {

/// Base class for every error raised by the library. Holds an optional
/// source description (file path, field name) so CLI diagnostics can name
/// the offending input.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Codec / format errors.
struct BadMagic : Error {
  using Error::Error;
};
struct VersionUnsupported : Error {
  using Error::Error;
};
struct TruncatedPayload : Error {
  using Error::Error;
};
struct LabelOutOfRange : Error {
  using Error::Error;
};

// Indexing and shape errors.
struct IndexOutOfBounds : Error {
  using Error::Error;
};
struct DimMismatch : Error {
  using Error::Error;
};
struct ShapeMismatch : Error {
  using Error::Error;
};
struct LengthMismatch : Error {
  using Error::Error;
};
struct ResolutionMismatch : Error {
  using Error::Error;
};
struct BinMismatch : Error {
  using Error::Error;
};

// Layout editing.
struct RegionOutOfBounds : Error {
  using Error::Error;
};
struct CodeOutOfPalette : Error {
  using Error::Error;
};

// Sampling / rendering.
struct NoOverlap : Error {
  using Error::Error;
};
struct EmptySupport : Error {
  using Error::Error;
};

// Diffusion plumbing.
struct BadRange : Error {
  using Error::Error;
};
struct StepRange : Error {
  using Error::Error;
};

// Losses and metrics.
struct AllMasked : Error {
  using Error::Error;
};
struct NotNormalized : Error {
  using Error::Error;
};

struct InvalidArgument : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace occscene
