// Copyright 2026 The opsys Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace opsys {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative numerical routine did not converge within its cap.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// A matrix was expected to lie in an operator system but does not.
class NotInSystem : public Error {
 public:
  using Error::Error;
};

class IncompatibleSystems : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

/// The Choi criterion needs a map defined on the whole of M_n.
class DomainNotFull : public Error {
 public:
  using Error::Error;
};

class MissingRepresentation : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed or unreadable input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace opsys
