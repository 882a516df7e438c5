#include "isomlab/certificate.hpp"

namespace isomlab {

std::string to_string(CertStatus status) {
  switch (status) {
    case CertStatus::Pass:
      return "PASS";
    case CertStatus::Fail:
      return "FAIL";
    case CertStatus::FailedPrecondition:
      return "FAILED_PRECONDITION";
  }
  return "FAIL";
}

nlohmann::ordered_json certificate_to_json(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["kind"] = cert.kind;
  j["claimed_bound"] = cert.claimed_bound;
  j["achieved"] = cert.achieved;
  j["witnesses"] = cert.witnesses;
  j["status"] = to_string(cert.status);
  if (!cert.extra.empty()) j["extra"] = cert.extra;
  return j;
}

Certificate make_certificate(std::string kind, double claimed, double achieved) {
  Certificate cert;
  cert.kind = std::move(kind);
  cert.claimed_bound = claimed;
  cert.achieved = achieved;
  cert.status = achieved <= claimed ? CertStatus::Pass : CertStatus::Fail;
  return cert;
}

}  // namespace isomlab
