/*
 * Copyright 2026 The ParityForge Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

namespace parityforge::cli {

// Stable exit codes, also documented in the README and --help text.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUnexpected = 1;
inline constexpr int kExitParse = 2;       // flag or input parse failure
inline constexpr int kExitValidation = 3;  // input fails validation
inline constexpr int kExitNumerical = 4;   // numerical failure while solving
inline constexpr int kExitSplit = 5;       // a split left some group empty
inline constexpr int kExitIo = 6;          // unreadable/unwritable path

// Entry point shared by the binary and the tests.
int cli_main(int argc, const char* const* argv);

}  // namespace parityforge::cli
