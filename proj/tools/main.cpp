#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nhf/directsum.hpp"
#include "nhf/framespec.hpp"
#include "nhf/propcheck.hpp"
#include "nhf/tensor.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitInput = 1;
constexpr int kExitVerdict = 2;
constexpr int kExitUsage = 64;

nhf::Json bounds_json(const nhf::ControlledBounds& b) {
  nhf::Json j;
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  j["realness_defect"] = b.realness_defect;
  j["classification"] = nhf::to_string(b.classification);
  return j;
}

void emit(const nhf::Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw nhf::Error("cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
}

int cmd_analyze(const nhf::FrameSpecFile& spec, const std::string& out_path) {
  const nhf::ControlledFrame cf = spec.primary.build();
  const nhf::FrameBounds ordinary = nhf::optimal_bounds(cf.frame());
  const nhf::ControlledBounds cb = nhf::controlled_bounds(cf);

  nhf::Json j;
  j["quotient_dim"] = cf.frame().space()->quotient_dim();
  j["ordinary_bounds"] = {{"lower", ordinary.lower}, {"upper", ordinary.upper}};
  j["controlled_bounds"] = bounds_json(cb);
  j["control_condition"] = nhf::classify(cf.control()).condition_number;
  j["frame_operator_condition"] = nhf::classify(cf.plain_operator()).condition_number;
  emit(j, out_path);
  return cb.classification == nhf::ControlledClass::controlled_frame ? kExitPass : kExitVerdict;
}

int cmd_parsevalize(const nhf::FrameSpecFile& spec, const std::string& out_path) {
  const nhf::ControlledFrame cf = spec.primary.build();
  const nhf::ControlledFrame p = nhf::parsevalize(cf);
  nhf::FrameSpecFile out;
  out.primary = nhf::block_from_family(p.frame(), spec.primary.control);
  emit(nhf::frame_spec_to_json(out), out_path);
  return kExitPass;
}

int cmd_dual(const nhf::FrameSpecFile& spec, const std::string& out_path) {
  const nhf::ControlledFrame cf = spec.primary.build();
  const nhf::FrameFamily dual = nhf::canonical_dual(cf);
  if (!nhf::dual_check(cf, dual)) throw nhf::Error("canonical dual fails the reconstruction check");
  nhf::FrameSpecFile out;
  out.primary = nhf::block_from_family(dual, spec.primary.control);
  emit(nhf::frame_spec_to_json(out), out_path);
  return kExitPass;
}

int cmd_tensor(const nhf::FrameSpecFile& spec, const std::string& out_path, double tol,
               uint64_t seed) {
  if (!spec.secondary) throw nhf::Error("tensor requires a second block (anchors2/vectors2)");
  const nhf::TensorControlledFrame tcf(spec.primary.build(), spec.secondary->build());

  const nhf::Operator s = nhf::tensor_frame_operator(tcf);
  const nhf::Matrix via_kron = nhf::kron(tcf.left().controlled_operator().mat,
                                         tcf.right().controlled_operator().mat);
  const double kron_residual = (s.mat - via_kron).norm() / (1.0 + via_kron.norm());
  const nhf::ControlledBounds b = nhf::tensor_controlled_bounds(tcf);
  const nhf::ControlledBounds lb = nhf::controlled_bounds(tcf.left());
  const nhf::ControlledBounds rb = nhf::controlled_bounds(tcf.right());
  const bool sandwich = b.lower >= lb.lower * rb.lower - tol * (1.0 + std::abs(lb.lower * rb.lower)) &&
                        b.upper <= lb.upper * rb.upper + tol * (1.0 + std::abs(lb.upper * rb.upper));
  const nhf::FactorizationReport fr = nhf::factorization_check(tcf, seed);

  nhf::Json j;
  j["tensor_bounds"] = bounds_json(b);
  j["kron_identity_residual"] = kron_residual;
  j["sandwich_holds"] = sandwich;
  j["factorization"] = {{"tensor_class", nhf::to_string(fr.tensor_class)},
                        {"left_class", nhf::to_string(fr.left_class)},
                        {"right_class", nhf::to_string(fr.right_class)},
                        {"iff_holds", fr.iff_holds},
                        {"sampled_lower", fr.sampled_lower},
                        {"sampled_upper", fr.sampled_upper},
                        {"sampled_bounds_valid", fr.sampled_bounds_valid},
                        {"probes_used", fr.probes_used}};
  emit(j, out_path);
  const bool pass = sandwich && kron_residual <= tol && fr.iff_holds &&
                    (fr.probes_used == 0 || fr.sampled_bounds_valid);
  return pass ? kExitPass : kExitVerdict;
}

int cmd_dsum(const nhf::FrameSpecFile& spec, const std::string& out_path, double tol) {
  if (!spec.secondary) throw nhf::Error("dsum requires a second block (anchors2/vectors2)");
  const nhf::DirectSumFrame dsf(spec.primary.build(), spec.secondary->build());
  const nhf::ControlledBounds b = nhf::dsum_controlled_bounds(dsf);
  const nhf::ControlledBounds lb = nhf::controlled_bounds(dsf.left());
  const nhf::ControlledBounds rb = nhf::controlled_bounds(dsf.right());
  const double lo = std::min(lb.lower, rb.lower);
  const double hi = std::max(lb.upper, rb.upper);
  const bool sandwich = b.lower >= lo - tol * (1.0 + std::abs(lo)) &&
                        b.upper <= hi + tol * (1.0 + std::abs(hi));

  nhf::Json j;
  j["cross_terms_vanish"] = true;  // dsum_controlled_bounds certifies the basis grid
  j["dsum_bounds"] = bounds_json(b);
  j["component_envelope"] = {{"lower", lo}, {"upper", hi}};
  j["sandwich_holds"] = sandwich;
  emit(j, out_path);
  return sandwich ? kExitPass : kExitVerdict;
}

int cmd_verify(uint64_t seed, int trials, const std::string& out_path) {
  const std::vector<nhf::TheoremReport> reports = nhf::run_suite(seed, trials);
  emit(nhf::reports_to_json(reports), out_path);
  for (const auto& r : reports)
    if (r.status == "fail") return kExitVerdict;
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled frame toolkit for n-Hilbert spaces"};
  app.require_subcommand(1);

  std::string path;
  std::string out_path;
  uint64_t seed = 0;
  int trials = 50;
  double tol = 1e-9;

  CLI::App* analyze = app.add_subcommand("analyze", "Bounds and classification of a frame file");
  analyze->add_option("file", path)->required();
  analyze->add_option("--out", out_path);

  CLI::App* parsevalize = app.add_subcommand("parsevalize", "Rescale to a controlled Parseval frame");
  parsevalize->add_option("file", path)->required();
  parsevalize->add_option("--out", out_path)->required();

  CLI::App* dual = app.add_subcommand("dual", "Write the canonical dual family");
  dual->add_option("file", path)->required();
  dual->add_option("--out", out_path)->required();

  CLI::App* tensor = app.add_subcommand("tensor", "Tensor-product verdicts for a two-block file");
  tensor->add_option("file", path)->required();
  tensor->add_option("--out", out_path);
  tensor->add_option("--tol", tol);
  tensor->add_option("--seed", seed);

  CLI::App* dsum = app.add_subcommand("dsum", "Direct-sum verdicts for a two-block file");
  dsum->add_option("file", path)->required();
  dsum->add_option("--out", out_path);
  dsum->add_option("--tol", tol);

  CLI::App* verify = app.add_subcommand("verify", "Run the randomized theorem suite");
  verify->add_option("--seed", seed);
  verify->add_option("--trials", trials)->check(CLI::PositiveNumber);
  verify->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  nhf::FrameSpecFile spec;
  const bool needs_file = !verify->parsed();
  if (needs_file) {
    try {
      spec = nhf::load_frame_spec(path);
    } catch (const std::exception& e) {
      std::cerr << "input error: " << e.what() << "\n";
      return kExitInput;
    }
  }

  try {
    if (analyze->parsed()) return cmd_analyze(spec, out_path);
    if (parsevalize->parsed()) return cmd_parsevalize(spec, out_path);
    if (dual->parsed()) return cmd_dual(spec, out_path);
    if (tensor->parsed()) return cmd_tensor(spec, out_path, tol, seed);
    if (dsum->parsed()) return cmd_dsum(spec, out_path, tol);
    if (verify->parsed()) return cmd_verify(seed, trials, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerdict;
  }
  return kExitUsage;
}
