/*
 *  Copyright 2026 The docsr Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace docsr {

// Root of every error the library raises. Each subclass names one failure
// kind so callers (and the CLI exit-code mapping) can dispatch on type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define DOCSR_DEFINE_ERROR(Name)              \
    class Name : public Error {               \
    public:                                   \
        using Error::Error;                   \
    }

DOCSR_DEFINE_ERROR(ShapeMismatch);
DOCSR_DEFINE_ERROR(NonPositiveOutput);
DOCSR_DEFINE_ERROR(IndivisibleStride);
DOCSR_DEFINE_ERROR(NonFiniteLoss);
DOCSR_DEFINE_ERROR(IoError);
DOCSR_DEFINE_ERROR(FormatError);
DOCSR_DEFINE_ERROR(ChecksumError);
DOCSR_DEFINE_ERROR(UnsupportedFormat);
DOCSR_DEFINE_ERROR(PageTooSmall);
DOCSR_DEFINE_ERROR(ImageTooSmall);
DOCSR_DEFINE_ERROR(EmptyCorpus);
DOCSR_DEFINE_ERROR(EmptyDataset);

#undef DOCSR_DEFINE_ERROR

} // namespace docsr
