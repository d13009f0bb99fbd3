#include "tamecube/report.hpp"

namespace tamecube {

Json to_json(const TamenessReport& r) {
  Json j;
  j["passed"] = r.passed;
  j["eps"] = r.eps;
  j["worst"] = r.worst;
  if (r.witness) {
    j["witness"] = {{"point", r.witness->point},
                    {"axis", r.witness->axis + 1},
                    {"alpha", r.witness->alpha}};
  } else {
    j["witness"] = nullptr;
  }
  j["samples"] = r.samples;
  return j;
}

Json to_json(const SeamReport& r) {
  return {{"passed", r.passed},
          {"value_gap", r.value_gap},
          {"deriv_gap", r.deriv_gap},
          {"samples", r.samples}};
}

Json to_json(const ReplacementTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json faces = Json::array();
    for (const auto& f : s.faces) {
      Json jf{{"face", f.face.signature()}, {"sigma", f.sigma}, {"attempts", f.attempts}};
      if (f.attempts > 0) jf["report"] = to_json(f.report);
      faces.push_back(std::move(jf));
    }
    Json js{{"dim", s.dim}};
    if (s.dim > 0) {
      js["params"] = {{"eps", s.params.eps},
                      {"sigma", s.params.sigma},
                      {"eps_prime", s.params.eps_prime},
                      {"sigma_prime", s.params.sigma_prime}};
    }
    js["faces"] = std::move(faces);
    steps.push_back(std::move(js));
  }
  return {{"eps", t.eps},
          {"initial_width", t.initial_width},
          {"initial_sigma", t.initial_sigma},
          {"steps", std::move(steps)},
          {"final", to_json(t.final_report)}};
}

}  // namespace tamecube
