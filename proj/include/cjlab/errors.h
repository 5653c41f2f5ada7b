// Copyright 2026 The cjlab Authors
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

#ifndef CJLAB_ERRORS_H
#define CJLAB_ERRORS_H

#include <stdexcept>
#include <string>

namespace cjlab {

/// A parameter is outside the domain where the quantity is defined.
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A heralded source that can never trigger (zero gain or trigger efficiency).
class DegenerateSourceError : public DomainError {
   public:
    using DomainError::DomainError;
};

/// The Fock cutoff cannot hold the propagated state.
class CutoffTooSmallError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An iterative routine hit its iteration cap.
class ConvergenceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A run configuration failed validation. `field` names the offending entry.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(std::string field, const std::string &what)
        : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {
    }
    const std::string &field() const {
        return field_;
    }

   private:
    std::string field_;
};

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Throws DomainError with `what` unless `ok`.
inline void require(bool ok, const std::string &what) {
    if (!ok) {
        throw DomainError(what);
    }
}

}  // namespace cjlab

#endif
