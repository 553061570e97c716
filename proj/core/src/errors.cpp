/*
 * Copyright 2026 The Airslice Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "airslice/errors.hpp"

namespace airslice {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::ZeroTotalBlocks: return "ZeroTotalBlocks";
    case Errc::InvalidPhyRate: return "InvalidPhyRate";
    case Errc::InvalidSubcarrierCount: return "InvalidSubcarrierCount";
    case Errc::InvalidStreamCount: return "InvalidStreamCount";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::TooManyVariables: return "TooManyVariables";
    case Errc::QuotaOverflow: return "QuotaOverflow";
    case Errc::InfeasibleStatic: return "InfeasibleStatic";
    case Errc::ReportCycleMismatch: return "ReportCycleMismatch";
    case Errc::MissingSubstrateReport: return "MissingSubstrateReport";
    case Errc::Unreachable: return "Unreachable";
    case Errc::MalformedPolicy: return "MalformedPolicy";
    case Errc::ValidationFailed: return "ValidationFailed";
    case Errc::StaleVersion: return "StaleVersion";
    case Errc::CorruptStore: return "CorruptStore";
    case Errc::ZeroStaticRevenue: return "ZeroStaticRevenue";
    case Errc::EmptySeries: return "EmptySeries";
    case Errc::IoError: return "IoError";
    case Errc::InvalidConfig: return "InvalidConfig";
  }
  return "UnknownError";
}

}  // namespace airslice
