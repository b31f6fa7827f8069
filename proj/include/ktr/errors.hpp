// Copyright 2026 The ktr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ktr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Dense work requested above the configured qubit cap.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class NotTimeReversal : public Error {
 public:
  using Error::Error;
};

class DegenerateProjection : public Error {
 public:
  using Error::Error;
};

class DegeneratePencil : public Error {
 public:
  using Error::Error;
};

// A numerical self-check failed (imaginary residue, factorization error, ...).
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class ModelConsistency : public Error {
 public:
  using Error::Error;
};

// Malformed text input: configs, Pauli-sum files, pencil dumps.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ktr
