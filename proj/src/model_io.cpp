#include <fstream>
#include <sstream>
#include <stdexcept>

#include "termrank/classifier.hpp"
#include "termrank/text_util.hpp"

namespace termrank {

namespace {

constexpr const char* kMagic = "termrank-model v1";

std::string expect_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error(std::string("model file truncated, expected ") + what);
  }
  return line;
}

std::vector<std::string> expect_fields(std::istream& in, const char* tag, std::size_t count) {
  auto fields = split_ws(expect_line(in, tag));
  if (fields.empty() || fields[0] != tag || fields.size() != count + 1) {
    throw std::runtime_error(std::string("model file: bad '") + tag + "' line");
  }
  return fields;
}

}  // namespace

void save_model(const std::filesystem::path& path, const ProbabilisticModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model: " + path.string());
  const SvmModel& svm = model.svm;
  out << kMagic << '\n';
  out << "kernel " << (svm.kernel.type == KernelSpec::Type::rbf ? "rbf" : "linear") << ' '
      << format_exact(svm.kernel.gamma) << '\n';
  out << "c " << format_exact(svm.c) << '\n';
  out << "weights " << format_exact(svm.weight_pos) << ' ' << format_exact(svm.weight_neg)
      << '\n';
  out << "bias " << format_exact(svm.bias) << '\n';
  out << "calibration " << format_exact(model.calibration.a) << ' '
      << format_exact(model.calibration.b) << '\n';
  out << "converged " << (svm.converged ? 1 : 0) << '\n';
  out << "dim " << svm.dim() << '\n';
  out << "nsv " << svm.support_vectors.size() << '\n';
  for (std::size_t i = 0; i < svm.support_vectors.size(); ++i) {
    out << "sv " << svm.sv_indices[i] << ' ' << format_exact(svm.coef[i]);
    for (const double v : svm.support_vectors[i]) out << ' ' << format_exact(v);
    out << '\n';
  }
  out << "end\n";
}

ProbabilisticModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read model: " + path.string());
  if (expect_line(in, "magic header") != kMagic) {
    throw std::runtime_error("model file: unknown format/version (expected '" +
                             std::string(kMagic) + "')");
  }
  ProbabilisticModel model;
  SvmModel& svm = model.svm;

  const auto kernel = expect_fields(in, "kernel", 2);
  if (kernel[1] == "rbf") {
    svm.kernel.type = KernelSpec::Type::rbf;
  } else if (kernel[1] == "linear") {
    svm.kernel.type = KernelSpec::Type::linear;
  } else {
    throw std::runtime_error("model file: unknown kernel '" + kernel[1] + "'");
  }
  svm.kernel.gamma = parse_double(kernel[2], "model kernel gamma");

  svm.c = parse_double(expect_fields(in, "c", 1)[1], "model c");
  const auto weights = expect_fields(in, "weights", 2);
  svm.weight_pos = parse_double(weights[1], "model weight_pos");
  svm.weight_neg = parse_double(weights[2], "model weight_neg");
  svm.bias = parse_double(expect_fields(in, "bias", 1)[1], "model bias");
  const auto calibration = expect_fields(in, "calibration", 2);
  model.calibration.a = parse_double(calibration[1], "model calibration a");
  model.calibration.b = parse_double(calibration[2], "model calibration b");
  svm.converged = parse_int(expect_fields(in, "converged", 1)[1], "model converged") != 0;
  const long long dim = parse_int(expect_fields(in, "dim", 1)[1], "model dim");
  const long long nsv = parse_int(expect_fields(in, "nsv", 1)[1], "model nsv");
  if (dim < 0 || nsv < 0) throw std::runtime_error("model file: negative dim/nsv");

  for (long long s = 0; s < nsv; ++s) {
    const auto fields = split_ws(expect_line(in, "sv line"));
    if (fields.size() != static_cast<std::size_t>(dim) + 3 || fields[0] != "sv") {
      throw std::runtime_error("model file: bad sv line");
    }
    svm.sv_indices.push_back(
        static_cast<std::size_t>(parse_int(fields[1], "model sv index")));
    svm.coef.push_back(parse_double(fields[2], "model sv coef"));
    std::vector<double> vec(static_cast<std::size_t>(dim));
    for (long long c = 0; c < dim; ++c) {
      vec[static_cast<std::size_t>(c)] =
          parse_double(fields[static_cast<std::size_t>(c) + 3], "model sv component");
    }
    svm.support_vectors.push_back(std::move(vec));
  }
  if (trim(expect_line(in, "end marker")) != "end") {
    throw std::runtime_error("model file: missing end marker");
  }
  return model;
}

}  // namespace termrank
