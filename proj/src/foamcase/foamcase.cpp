#include "hullopt/foamcase.hpp"

#include "hullopt/format.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hullopt::foam {

namespace fs = std::filesystem;

TurbulenceIC turbulence_ic(double velocity, double intensity_pct, double length_scale,
                           double c_mu) {
  if (!(velocity > 0.0)) throw std::invalid_argument("turbulence_ic: velocity must be > 0");
  if (!(intensity_pct > 0.0)) throw std::invalid_argument("turbulence_ic: intensity must be > 0");
  if (!(length_scale > 0.0)) throw std::invalid_argument("turbulence_ic: length scale must be > 0");
  if (!(c_mu > 0.0)) throw std::invalid_argument("turbulence_ic: C_mu must be > 0");
  const double intensity = intensity_pct / 100.0;
  const double ui = velocity * intensity;
  const double k = 1.5 * ui * ui;
  const double omega = std::sqrt(k) / (length_scale * std::pow(c_mu, 0.25));
  return {k, omega, length_scale, c_mu};
}

namespace {

constexpr std::string_view kBanner =
    "/*--------------------------------*- C++ -*----------------------------------*\\\n"
    "  Generated by hullopt. Mesh, wall treatment, domain size and convergence\n"
    "  settings are placeholders; review them before running a solver.\n"
    "\\*---------------------------------------------------------------------------*/\n";

constexpr std::string_view kRule =
    "// * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * //\n\n";

constexpr std::string_view kFooter =
    "\n// ************************************************************************* //\n";

std::string header(std::string_view cls, std::string_view location, std::string_view object) {
  std::string s(kBanner);
  s += "FoamFile\n{\n";
  s += "    version     2.0;\n";
  s += "    format      ascii;\n";
  s += "    class       " + std::string(cls) + ";\n";
  s += "    location    \"" + std::string(location) + "\";\n";
  s += "    object      " + std::string(object) + ";\n";
  s += "}\n";
  s += kRule;
  return s;
}

std::string scalar_field(std::string_view object, std::string_view dims, double value,
                         std::string_view wall_function) {
  const std::string v = "uniform " + format_sig9(value) + ";";
  std::string s = header("volScalarField", "0", object);
  s += "dimensions      " + std::string(dims) + ";\n\n";
  s += "internalField   " + v + "\n\n";
  s += "boundaryField\n{\n";
  s += "    inlet\n    {\n        type            fixedValue;\n        value           " + v +
       "\n    }\n";
  s += "    outlet\n    {\n        type            inletOutlet;\n        inletValue      " + v +
       "\n        value           " + v + "\n    }\n";
  s += "    farfield\n    {\n        type            slip;\n    }\n";
  s += "    hull\n    {\n        type            " + std::string(wall_function) +
       ";\n        value           " + v + "\n    }\n";
  s += "}\n";
  s += kFooter;
  return s;
}

std::string velocity_field(double u) {
  const std::string v = "uniform (" + format_sig9(u) + " 0 0);";
  std::string s = header("volVectorField", "0", "U");
  s += "dimensions      [0 1 -1 0 0 0 0];\n\n";
  s += "internalField   " + v + "\n\n";
  s += "boundaryField\n{\n";
  s += "    inlet\n    {\n        type            fixedValue;\n        value           " + v +
       "\n    }\n";
  s += "    outlet\n    {\n        type            inletOutlet;\n"
       "        inletValue      uniform (0 0 0);\n        value           " +
       v + "\n    }\n";
  s += "    farfield\n    {\n        type            slip;\n    }\n";
  s += "    hull\n    {\n        type            noSlip;\n    }\n";
  s += "}\n";
  s += kFooter;
  return s;
}

std::string transport_properties(const drag::FluidProps& fluid) {
  std::string s = header("dictionary", "constant", "transportProperties");
  s += "transportModel  Newtonian;\n\n";
  s += "nu              " + format_sig9(fluid.kinematic_viscosity) + ";\n";
  s += kFooter;
  return s;
}

std::string control_dict(const drag::Scenario& scenario, const drag::FluidProps& fluid) {
  const double frontal_area = std::numbers::pi * kMaxRadius * kMaxRadius;
  std::string s = header("dictionary", "system", "controlDict");
  s += "application     simpleFoam;\n\n";
  s += "startFrom       startTime;\n\nstartTime       0;\n\n";
  s += "stopAt          endTime;\n\nendTime         2000;\n\ndeltaT          1;\n\n";
  s += "writeControl    timeStep;\n\nwriteInterval   500;\n\npurgeWrite      2;\n\n";
  s += "writeFormat     ascii;\n\nwritePrecision  9;\n\ntimePrecision   6;\n\n";
  s += "runTimeModifiable true;\n\n";
  s += "functions\n{\n";
  s += "    forces\n    {\n";
  s += "        type            forces;\n";
  s += "        libs            (\"libforces.so\");\n";
  s += "        writeControl    timeStep;\n        writeInterval   1;\n";
  s += "        patches         (hull);\n";
  s += "        rho             rhoInf;\n";
  s += "        rhoInf          " + format_sig9(fluid.density) + ";\n";
  s += "        CofR            (0 0 0);\n";
  s += "    }\n\n";
  s += "    forceCoeffs\n    {\n";
  s += "        type            forceCoeffs;\n";
  s += "        libs            (\"libforces.so\");\n";
  s += "        writeControl    timeStep;\n        writeInterval   1;\n";
  s += "        patches         (hull);\n";
  s += "        rho             rhoInf;\n";
  s += "        rhoInf          " + format_sig9(fluid.density) + ";\n";
  s += "        liftDir         (0 1 0);\n        dragDir         (1 0 0);\n";
  s += "        CofR            (0 0 0);\n        pitchAxis       (0 0 1);\n";
  s += "        magUInf         " + format_sig9(scenario.velocity) + ";\n";
  s += "        lRef            " + format_sig9(kHullLength) + ";\n";
  s += "        Aref            " + format_sig9(frontal_area) + ";\n";
  s += "    }\n}\n";
  s += kFooter;
  return s;
}

std::string fv_schemes() {
  std::string s = header("dictionary", "system", "fvSchemes");
  s += "ddtSchemes\n{\n    default         steadyState;\n}\n\n";
  s += "gradSchemes\n{\n    default         Gauss linear;\n}\n\n";
  s += "divSchemes\n{\n    default         none;\n"
       "    div(phi,U)      bounded Gauss linearUpwind grad(U);\n"
       "    div(phi,k)      bounded Gauss upwind;\n"
       "    div(phi,omega)  bounded Gauss upwind;\n"
       "    div((nuEff*dev2(T(grad(U))))) Gauss linear;\n}\n\n";
  s += "laplacianSchemes\n{\n    default         Gauss linear corrected;\n}\n\n";
  s += "interpolationSchemes\n{\n    default         linear;\n}\n\n";
  s += "snGradSchemes\n{\n    default         corrected;\n}\n\n";
  s += "wallDist\n{\n    method          meshWave;\n}\n";
  s += kFooter;
  return s;
}

std::string fv_solution() {
  std::string s = header("dictionary", "system", "fvSolution");
  s += "solvers\n{\n";
  s += "    p\n    {\n        solver          GAMG;\n        tolerance       1e-7;\n"
       "        relTol          0.01;\n        smoother        GaussSeidel;\n    }\n\n";
  s += "    \"(U|k|omega)\"\n    {\n        solver          smoothSolver;\n"
       "        smoother        symGaussSeidel;\n        tolerance       1e-8;\n"
       "        relTol          0.1;\n    }\n}\n\n";
  s += "SIMPLE\n{\n    nNonOrthogonalCorrectors 0;\n    consistent      yes;\n\n"
       "    // Placeholder convergence targets.\n"
       "    residualControl\n    {\n        p               1e-5;\n"
       "        \"(U|k|omega)\"   1e-6;\n    }\n}\n\n";
  s += "relaxationFactors\n{\n    equations\n    {\n        U               0.9;\n"
       "        \".*\"            0.7;\n    }\n}\n";
  s += kFooter;
  return s;
}

void write_bytes(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), std::streamsize(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

const std::vector<std::string>& case_files() {
  static const std::vector<std::string> files{
      "0/U",
      "0/k",
      "0/omega",
      "constant/transportProperties",
      "system/controlDict",
      "system/fvSchemes",
      "system/fvSolution",
      "constant/triSurface/hull.stl",
  };
  return files;
}

std::string render_case_file(std::string_view relative_path, const drag::Scenario& scenario,
                             const drag::FluidProps& fluid, const TurbulenceIC& ic) {
  if (relative_path == "0/U") return velocity_field(scenario.velocity);
  if (relative_path == "0/k") return scalar_field("k", "[0 2 -2 0 0 0 0]", ic.k, "kqRWallFunction");
  if (relative_path == "0/omega") {
    return scalar_field("omega", "[0 0 -1 0 0 0 0]", ic.omega, "omegaWallFunction");
  }
  if (relative_path == "constant/transportProperties") return transport_properties(fluid);
  if (relative_path == "system/controlDict") return control_dict(scenario, fluid);
  if (relative_path == "system/fvSchemes") return fv_schemes();
  if (relative_path == "system/fvSolution") return fv_solution();
  throw std::invalid_argument("no text template for case file " + std::string(relative_path));
}

void write_case(const fs::path& dir, const HullProfile& profile, const drag::Scenario& scenario,
                const drag::FluidProps& fluid, const TurbulenceIC& ic) {
  scenario.validate();
  fluid.validate();
  try {
    for (const auto& rel : case_files()) {
      const fs::path target = dir / rel;
      fs::create_directories(target.parent_path());
      if (rel == "constant/triSurface/hull.stl") {
        write_bytes(target, export_stl(profile, kCaseStlAxial, kCaseStlCirc));
      } else {
        write_bytes(target, render_case_file(rel, scenario, fluid, ic));
      }
    }
  } catch (const fs::filesystem_error& e) {
    throw std::runtime_error(std::string("write_case: ") + e.what());
  }
}

ForceLog parse_force_log(std::string_view text) {
  ForceLog log{};
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::string cleaned = line;
    for (char& c : cleaned) {
      if (c == '(' || c == ')' || c == '\t' || c == '\r') c = ' ';
    }
    std::vector<double> values;
    bool ok = true;
    std::istringstream tokens(cleaned);
    std::string tok;
    while (tokens >> tok) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        ok = false;
        break;
      }
      values.push_back(v);
    }
    if (!ok || values.size() < 2) {
      log.malformed.push_back("line " + std::to_string(lineno) + ": " + line);
      continue;
    }
    log.history.push_back({values[0], values[1]});
  }
  if (log.history.empty()) throw std::runtime_error("force log contains no data rows");

  const std::size_t n = log.history.size();
  const std::size_t tail = (n + 4) / 5;
  double sum = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) sum += log.history[i].fx;
  log.final_drag = sum / double(tail);
  return log;
}

fs::path force_log_path(const fs::path& case_dir) {
  return case_dir / "postProcessing" / "forces" / "0" / "force.dat";
}

}  // namespace hullopt::foam
