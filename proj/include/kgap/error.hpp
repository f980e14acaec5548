/*
 * Copyright 2026 The kgap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef KGAP_ERROR_HPP
#define KGAP_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kgap {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/** Malformed files, unknown ids, invalid histories. */
class InputError : public Error
{
public:
    using Error::Error;
};

/** A configured exploration cap was hit; the answer is unknown, not negative. */
class ResourceError : public Error
{
public:
    using Error::Error;
};

/** The operation needs a game that allows recurring common knowledge of the state. */
class NotRcksError : public Error
{
public:
    using Error::Error;
};

/** A Nature strategy handed to the spoiler failed to defeat the profile. */
class NotWinningError : public Error
{
public:
    using Error::Error;
};

struct Budget
{
    std::size_t max_histories = 1000000;
    std::size_t max_outcome_sets = 1000000;
};

/** Counts explored objects against a cap and throws ResourceError when exceeded. */
class BudgetMeter
{
public:
    BudgetMeter(std::size_t cap, const char *what) : cap_(cap), what_(what) {}

    void charge(std::size_t n = 1)
    {
        used_ += n;
        if (used_ > cap_) {
            throw ResourceError(std::string("budget exceeded: more than ") + std::to_string(cap_) + " " + what_);
        }
    }

    [[nodiscard]] std::size_t used() const { return used_; }

private:
    std::size_t cap_;
    std::size_t used_ = 0;
    const char *what_;
};

}

#endif
