#pragma once

#include <stdexcept>
#include <string>

namespace cyclotile {

// Domain errors. Plain precondition violations use std::invalid_argument.
class TileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDigitSet : public TileError {
 public:
  using TileError::TileError;
};

class WrongCardinality : public TileError {
 public:
  using TileError::TileError;
};

class NormalizedInputRequired : public TileError {
 public:
  using TileError::TileError;
};

class NotInTree : public TileError {
 public:
  using TileError::TileError;
};

class InvalidBlocking : public TileError {
 public:
  using TileError::TileError;
};

class InvalidKernel : public TileError {
 public:
  using TileError::TileError;
};

class NotDirectSum : public TileError {
 public:
  using TileError::TileError;
};

class InvalidRepresentative : public TileError {
 public:
  using TileError::TileError;
};

class InvalidRegrouping : public TileError {
 public:
  using TileError::TileError;
};

class InvalidRecipe : public TileError {
 public:
  using TileError::TileError;
};

class InvalidCertificate : public TileError {
 public:
  using TileError::TileError;
};

}  // namespace cyclotile
