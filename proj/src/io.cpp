#include "qsr/io.hpp"

#include <cmath>
#include <fstream>

#include "qsr/linalg.hpp"
#include "qsr/random.hpp"

namespace qsr {

namespace {

using nlohmann::json;

std::string party_label(std::size_t idx) {
  static const char* first[] = {"A", "B", "C", "R"};
  if (idx < 4) return first[idx];
  return "S" + std::to_string(idx + 1);
}

LoadedState from_pure(const PureStateVector& psi) {
  return {psi.projector(), psi};
}

LoadedState ghz(long parties, long dim) {
  if (parties < 2 || dim < 2)
    throw std::invalid_argument("generator ghz: need parties >= 2 and dim >= 2");
  std::vector<SystemLayout::Subsystem> subs;
  long total = 1;
  for (long i = 0; i < parties; ++i) {
    subs.push_back({party_label((std::size_t)i), dim});
    total *= dim;
    if (total > 4096) throw std::invalid_argument("generator ghz: total dim too large");
  }
  SystemLayout layout(std::move(subs));
  VectorXcd amps = VectorXcd::Zero(layout.total_dim());
  long stride = 0;
  for (long i = 0; i < parties; ++i) stride = stride * dim + 1;
  for (long i = 0; i < dim; ++i) amps(i * stride) = 1.0 / std::sqrt((double)dim);
  return from_pure(PureStateVector(std::move(layout), std::move(amps)));
}

LoadedState werner(double p) {
  if (p < 0 || p > 1) throw std::invalid_argument("generator werner: p must lie in [0, 1]");
  SystemLayout layout({{"A", 2}, {"B", 2}});
  VectorXcd singlet = VectorXcd::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  MatrixXcd m = p * (singlet * singlet.adjoint()) +
                (1.0 - p) * 0.25 * MatrixXcd::Identity(4, 4);
  DensityOperator rho(layout, std::move(m));
  if (p > 1.0 - 1e-12) return {rho, PureStateVector(layout, std::move(singlet))};
  return {std::move(rho), std::nullopt};
}

LoadedState haar_pure_state(const SystemLayout& layout, std::uint64_t seed) {
  Rng rng(seed);
  return from_pure(haar_pure(layout, rng));
}

LoadedState maximally_entangled_state(long d) {
  if (d < 2) throw std::invalid_argument("generator maximally_entangled: need d >= 2");
  return from_pure(max_entangled("A", "B", d));
}

SystemLayout layout_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("state layout invariant violated: expected non-empty array");
  std::vector<SystemLayout::Subsystem> subs;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_number_integer())
      throw std::invalid_argument("state layout invariant violated: entries must be [label, dim]");
    long dim = e[1].get<long>();
    if (dim < 1)
      throw std::invalid_argument("state layout invariant violated: dims must be positive");
    subs.push_back({e[0].get<std::string>(), dim});
  }
  return SystemLayout(std::move(subs));
}

MatrixXcd matrix_from_json(const json& j, const char* key, long d) {
  if (!j.contains(key)) {
    if (std::string(key) == "matrix_im") return MatrixXcd::Zero(d, d);
    throw std::invalid_argument(std::string("state format: missing ") + key);
  }
  const json& m = j.at(key);
  if (!m.is_array() || (long)m.size() != d)
    throw std::invalid_argument(std::string("state format: ") + key + " must be a " +
                                std::to_string(d) + "-row square matrix");
  MatrixXcd out(d, d);
  for (long r = 0; r < d; ++r) {
    const json& row = m[(std::size_t)r];
    if (!row.is_array() || (long)row.size() != d)
      throw std::invalid_argument(std::string("state format: ") + key + " row " +
                                  std::to_string(r) + " has wrong length");
    for (long c = 0; c < d; ++c) out(r, c) = row[(std::size_t)c].get<double>();
  }
  return out;
}

/// Fix the global phase so the largest-magnitude amplitude is real positive.
VectorXcd canonical_phase(const VectorXcd& v) {
  long imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  Complex ph = v(imax) / std::abs(v(imax));
  return v / ph;
}

LoadedState generator_from_json(const json& j) {
  std::string name = j.at("generator").get<std::string>();
  json params = j.value("params", json::object());
  std::uint64_t seed = j.value("seed", (std::uint64_t)0);
  if (name == "ghz")
    return ghz(params.value("parties", 3L), params.value("dim", 2L));
  if (name == "werner") return werner(params.at("p").get<double>());
  if (name == "haar_pure")
    return haar_pure_state(layout_from_json(params.at("layout")), seed);
  if (name == "maximally_entangled")
    return maximally_entangled_state(params.at("d").get<long>());
  throw std::invalid_argument("unknown generator: " + name);
}

}  // namespace

LoadedState load_state_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("state format: expected a JSON object");
  if (j.contains("generator")) return generator_from_json(j);

  SystemLayout layout = layout_from_json(j.at("layout"));
  long d = layout.total_dim();
  MatrixXcd re = matrix_from_json(j, "matrix_re", d);
  MatrixXcd im = matrix_from_json(j, "matrix_im", d);
  MatrixXcd m = re + Complex(0, 1) * im;

  double herm = hermiticity_defect(m);
  if (herm > 1e-9)
    throw std::invalid_argument("state hermiticity invariant violated (defect " +
                                std::to_string(herm) + ")");
  m = 0.5 * (m + m.adjoint().eval());
  auto [vals, vecs] = hermitian_eig(m);
  if (vals.minCoeff() < -1e-9)
    throw std::invalid_argument("state positivity invariant violated (min eigenvalue " +
                                std::to_string(vals.minCoeff()) + ")");
  double tr = m.trace().real();
  if (std::abs(tr - 1.0) > 1e-8)
    throw std::invalid_argument("state trace invariant violated (trace " +
                                std::to_string(tr) + ", expected 1)");

  DensityOperator rho(layout, std::move(m));
  if (numerical_rank(vals) == 1) {
    VectorXcd top = vecs.col(vecs.cols() - 1);
    return {std::move(rho), PureStateVector(layout, canonical_phase(top / top.norm()))};
  }
  return {std::move(rho), std::nullopt};
}

LoadedState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("malformed state file " + path + ": " + e.what());
  }
  return load_state_json(j);
}

LoadedState make_generator(const std::string& spec) {
  auto open = spec.find('(');
  if (open == std::string::npos || spec.back() != ')')
    throw std::invalid_argument("generator spec must look like name(args): " + spec);
  std::string name = spec.substr(0, open);
  std::string args = spec.substr(open + 1, spec.size() - open - 2);
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= args.size() && !args.empty()) {
    auto comma = args.find(',', pos);
    parts.push_back(args.substr(pos, comma == std::string::npos ? comma : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }

  if (name == "ghz") {
    if (parts.size() != 2) throw std::invalid_argument("ghz expects (parties,dim)");
    return ghz(std::stol(parts[0]), std::stol(parts[1]));
  }
  if (name == "werner") {
    if (parts.size() != 1) throw std::invalid_argument("werner expects (p)");
    return werner(std::stod(parts[0]));
  }
  if (name == "maximally_entangled") {
    if (parts.size() != 1) throw std::invalid_argument("maximally_entangled expects (d)");
    return maximally_entangled_state(std::stol(parts[0]));
  }
  if (name == "haar_pure") {
    // haar_pure(A2xB2xR4,seed): labels are leading non-digits, dims trailing digits.
    if (parts.size() != 2) throw std::invalid_argument("haar_pure expects (layout,seed)");
    std::vector<SystemLayout::Subsystem> subs;
    std::size_t p = 0;
    const std::string& ls = parts[0];
    while (p < ls.size()) {
      auto sep = ls.find('x', p);
      std::string piece = ls.substr(p, sep == std::string::npos ? sep : sep - p);
      std::size_t digits = piece.find_first_of("0123456789");
      if (digits == std::string::npos || digits == 0)
        throw std::invalid_argument("haar_pure layout pieces must look like A2: " + piece);
      subs.push_back({piece.substr(0, digits), std::stol(piece.substr(digits))});
      if (sep == std::string::npos) break;
      p = sep + 1;
    }
    return haar_pure_state(SystemLayout(std::move(subs)),
                           (std::uint64_t)std::stoull(parts[1]));
  }
  throw std::invalid_argument("unknown generator: " + name);
}

nlohmann::json state_to_json(const DensityOperator& rho) {
  json layout = json::array();
  for (const auto& s : rho.layout().subsystems()) layout.push_back({s.label, s.dim});
  long d = rho.dim();
  json re = json::array(), im = json::array();
  for (long r = 0; r < d; ++r) {
    json rrow = json::array(), irow = json::array();
    for (long c = 0; c < d; ++c) {
      rrow.push_back(rho.matrix()(r, c).real());
      irow.push_back(rho.matrix()(r, c).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return json{{"layout", std::move(layout)},
              {"matrix_re", std::move(re)},
              {"matrix_im", std::move(im)}};
}

}  // namespace qsr
