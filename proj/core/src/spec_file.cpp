#include "salsa/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace salsa {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw std::invalid_argument("spec: invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(out)) bad_value(key, value);
  return out;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view value) {
  Int out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value);
  return out;
}

std::string fmt(double v) { return format_metric(v); }

}  // namespace

ProblemKind parse_problem_kind(std::string_view text) {
  if (text == "deblur-frame") return ProblemKind::deblur_frame;
  if (text == "deblur-ortho") return ProblemKind::deblur_ortho;
  if (text == "deblur-tv") return ProblemKind::deblur_tv;
  if (text == "inpaint-tv") return ProblemKind::inpaint_tv;
  if (text == "mri-tv") return ProblemKind::mri_tv;
  throw std::invalid_argument("unknown problem '" + std::string(text) + "'");
}

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::deblur_frame:
      return "deblur-frame";
    case ProblemKind::deblur_ortho:
      return "deblur-ortho";
    case ProblemKind::deblur_tv:
      return "deblur-tv";
    case ProblemKind::inpaint_tv:
      return "inpaint-tv";
    case ProblemKind::mri_tv:
      return "mri-tv";
  }
  return "?";
}

SolverKind parse_solver_kind(std::string_view text) {
  if (text == "salsa") return SolverKind::salsa;
  if (text == "ist") return SolverKind::ist;
  if (text == "fista") return SolverKind::fista;
  throw std::invalid_argument("unknown solver '" + std::string(text) + "'");
}

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::salsa:
      return "salsa";
    case SolverKind::ist:
      return "ist";
    case SolverKind::fista:
      return "fista";
  }
  return "?";
}

ExperimentSpec parse_experiment_spec(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentSpec spec;
  std::set<std::string, std::less<>> seen;
  bool have_problem = false;
  int line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("spec line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) throw std::invalid_argument("spec: empty value for key '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second) throw std::invalid_argument("spec: duplicate key '" + std::string(key) + "'");

    if (key == "problem") {
      spec.problem = parse_problem_kind(value);
      have_problem = true;
    } else if (key == "blur_id") {
      spec.blur_id = parse_blur_id(value);
    } else if (key == "noise_variance") {
      spec.noise_variance = parse_double(key, value);
    } else if (key == "snr_db") {
      spec.snr_db = parse_double(key, value);
    } else if (key == "missing_fraction") {
      spec.missing_fraction = parse_double(key, value);
    } else if (key == "radial_lines") {
      spec.radial_lines = parse_int<int>(key, value);
    } else if (key == "tau") {
      spec.tau = parse_double(key, value);
    } else if (key == "mu") {
      spec.mu = parse_double(key, value);
    } else if (key == "seed") {
      spec.seed = parse_int<std::uint64_t>(key, value);
    } else if (key == "image_path") {
      std::filesystem::path p{std::string(value)};
      spec.image_path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    } else if (key == "phantom") {
      spec.phantom = parse_int<int>(key, value);
    } else if (key == "crop") {
      spec.crop = parse_int<int>(key, value);
    } else if (key == "levels") {
      spec.levels = parse_int<int>(key, value);
    } else if (key == "tv_inner_iters") {
      spec.tv_inner_iters = parse_int<int>(key, value);
    } else if (key == "max_iters") {
      spec.max_iters = parse_int<int>(key, value);
    } else if (key == "rel_obj_tol") {
      spec.rel_obj_tol = parse_double(key, value);
    } else {
      throw std::invalid_argument("spec: unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_problem) throw std::invalid_argument("spec: missing required key 'problem'");
  validate(spec);
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_spec(buf.str(), path.parent_path());
}

std::string format_experiment_spec(const ExperimentSpec& spec) {
  std::ostringstream out;
  out << "problem = " << to_string(spec.problem) << '\n';
  if (spec.blur_id) out << "blur_id = " << to_string(*spec.blur_id) << '\n';
  if (spec.noise_variance) out << "noise_variance = " << fmt(*spec.noise_variance) << '\n';
  if (spec.snr_db) out << "snr_db = " << fmt(*spec.snr_db) << '\n';
  if (spec.missing_fraction) out << "missing_fraction = " << fmt(*spec.missing_fraction) << '\n';
  if (spec.radial_lines) out << "radial_lines = " << *spec.radial_lines << '\n';
  if (spec.tau) out << "tau = " << fmt(*spec.tau) << '\n';
  if (spec.mu) out << "mu = " << fmt(*spec.mu) << '\n';
  out << "seed = " << spec.seed << '\n';
  if (spec.image_path) out << "image_path = " << spec.image_path->string() << '\n';
  if (spec.phantom) out << "phantom = " << *spec.phantom << '\n';
  if (spec.crop) out << "crop = " << *spec.crop << '\n';
  if (spec.levels) out << "levels = " << *spec.levels << '\n';
  if (spec.tv_inner_iters) out << "tv_inner_iters = " << *spec.tv_inner_iters << '\n';
  if (spec.max_iters) out << "max_iters = " << *spec.max_iters << '\n';
  if (spec.rel_obj_tol) out << "rel_obj_tol = " << fmt(*spec.rel_obj_tol) << '\n';
  return out.str();
}

void validate(const ExperimentSpec& spec) {
  const std::string problem(to_string(spec.problem));
  auto reject = [&](bool present, const char* key) {
    if (present) throw std::invalid_argument("spec: key '" + std::string(key) + "' is not used by " + problem);
  };
  auto require = [&](bool present, const char* key) {
    if (!present) throw std::invalid_argument("spec: " + problem + " requires key '" + std::string(key) + "'");
  };

  const bool deblur = spec.problem == ProblemKind::deblur_frame || spec.problem == ProblemKind::deblur_ortho ||
                      spec.problem == ProblemKind::deblur_tv;
  const bool synthesis = spec.problem == ProblemKind::deblur_frame || spec.problem == ProblemKind::deblur_ortho;
  const bool inpaint = spec.problem == ProblemKind::inpaint_tv;
  const bool mri = spec.problem == ProblemKind::mri_tv;

  if (deblur) require(spec.blur_id.has_value(), "blur_id"); else reject(spec.blur_id.has_value(), "blur_id");
  if (inpaint) require(spec.missing_fraction.has_value(), "missing_fraction");
  else reject(spec.missing_fraction.has_value(), "missing_fraction");
  if (mri) {
    require(spec.radial_lines.has_value(), "radial_lines");
    require(spec.noise_variance.has_value(), "noise_variance");
  } else {
    reject(spec.radial_lines.has_value(), "radial_lines");
  }
  if (!inpaint) reject(spec.snr_db.has_value(), "snr_db");
  if (spec.snr_db && spec.noise_variance) {
    throw std::invalid_argument("spec: give either noise_variance or snr_db, not both");
  }
  if (!synthesis) reject(spec.levels.has_value(), "levels");
  if (synthesis) reject(spec.tv_inner_iters.has_value(), "tv_inner_iters");

  if (spec.image_path.has_value() == spec.phantom.has_value()) {
    throw std::invalid_argument("spec: exactly one of 'image_path' or 'phantom' is required");
  }
  if (spec.crop && !spec.image_path) throw std::invalid_argument("spec: 'crop' applies to image_path inputs only");

  if (spec.noise_variance && *spec.noise_variance < 0) throw std::invalid_argument("spec: noise_variance must be >= 0");
  if (spec.missing_fraction && !(*spec.missing_fraction >= 0.0 && *spec.missing_fraction < 1.0)) {
    throw std::invalid_argument("spec: missing_fraction must be in [0, 1)");
  }
  if (spec.radial_lines && *spec.radial_lines < 1) throw std::invalid_argument("spec: radial_lines must be >= 1");
  if (spec.tau && !(*spec.tau > 0)) throw std::invalid_argument("spec: tau must be positive");
  if (spec.mu && !(*spec.mu > 0)) throw std::invalid_argument("spec: mu must be positive");
  if (spec.phantom && *spec.phantom < 2) throw std::invalid_argument("spec: phantom size must be >= 2");
  if (spec.crop && *spec.crop < 1) throw std::invalid_argument("spec: crop must be positive");
  if (spec.levels && *spec.levels < 1) throw std::invalid_argument("spec: levels must be >= 1");
  if (spec.tv_inner_iters && *spec.tv_inner_iters < 1) throw std::invalid_argument("spec: tv_inner_iters must be >= 1");
  if (spec.max_iters && *spec.max_iters < 1) throw std::invalid_argument("spec: max_iters must be >= 1");
  if (spec.rel_obj_tol && *spec.rel_obj_tol < 0) throw std::invalid_argument("spec: rel_obj_tol must be >= 0");
}

}  // namespace salsa
