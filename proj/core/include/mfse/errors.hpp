#pragma once

#include <stdexcept>
#include <string>

namespace mfse {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A factorization pivot fell below the positive-definiteness tolerance.
// Callers that control the covariance payload can apply diagonal loading
// and retry; callers that do not should treat the frame as unusable.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

// Signal shorter than one analysis window.
class SignalTooShort : public Error {
 public:
  using Error::Error;
};

// Spectrogram layout does not match the filter-bank configuration.
class ConfigMismatch : public Error {
 public:
  using Error::Error;
};

// A pushed frame does not have the bin count the buffer was built with.
class BinCountMismatch : public Error {
 public:
  using Error::Error;
};

// Speech power at the selection index is below tolerance; the caller
// treats the bin as speech-absent.
class ZeroSpeechPsd : public Error {
 public:
  using Error::Error;
};

// The distortionless normalization denominator vanished.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

// Weight vector length does not match the stacked-frame order.
class OrderMismatch : public Error {
 public:
  using Error::Error;
};

// The metric reference signal carries no energy.
class ZeroReference : public Error {
 public:
  using Error::Error;
};

// Two signals that must align sample-for-sample have different lengths.
class LengthMismatch : public Error {
 public:
  using Error::Error;
};

// noisy != clean + noise within tolerance.
class RefMismatch : public Error {
 public:
  using Error::Error;
};

// The configured mode needs reference signals that were not supplied.
class MissingReference : public Error {
 public:
  using Error::Error;
};

// A configuration value is out of range or inconsistent.
class ConfigInvalid : public Error {
 public:
  using Error::Error;
};

// File could not be read, written, or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfse
