#pragma once

#include <json.hpp>
#include <string>

#include "isomlab/common.hpp"

namespace isomlab {

enum class CertStatus { Pass, Fail, FailedPrecondition };

std::string to_string(CertStatus status);

// Machine-checkable verdict: what was claimed, what was achieved, and the
// witnesses needed to replay the check.
struct Certificate {
  std::string kind;
  double claimed_bound = 0.0;
  double achieved = 0.0;
  nlohmann::ordered_json witnesses = nlohmann::ordered_json::array();
  CertStatus status = CertStatus::Pass;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  bool passed() const { return status == CertStatus::Pass; }
};

nlohmann::ordered_json certificate_to_json(const Certificate& cert);

// Convenience: PASS iff achieved <= claimed.
Certificate make_certificate(std::string kind, double claimed, double achieved);

}  // namespace isomlab
