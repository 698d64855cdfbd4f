#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fal/approx.hpp"
#include "fal/bounds.hpp"
#include "fal/calculus.hpp"
#include "fal/catalog.hpp"
#include "fal/cli.hpp"
#include "fal/error.hpp"
#include "fal/numerics.hpp"
#include "fal/symbolic.hpp"

namespace py = pybind11;

namespace {

py::object to_int(const fal::Integer& value) {
  return py::module_::import("builtins").attr("int")(value.get_str());
}

fal::Integer from_int(const py::int_& value) { return fal::Integer(py::str(value).cast<std::string>(), 10); }

py::dict density_dict(const fal::Composition& c, const fal::PrecisionContext& ctx) {
  const auto vol = fal::volume(c);
  const auto plain = fal::vd(c, ctx);
  const auto modified = fal::vd_mod(c, ctx);
  py::dict d;
  d["recipe"] = c.to_recipe_string();
  d["volume_exact"] = vol.value().to_string();
  d["volume_decimal"] = vol.evaluate(ctx).to_string(ctx.digits());
  d["a"] = to_int(fal::augmentations(c));
  d["atilde"] = to_int(fal::modified_augmentations(c));
  d["vd_exact"] = plain.exact().to_string();
  d["vd_decimal"] = plain.evaluated.to_string(ctx.digits());
  d["vdmod_exact"] = modified.exact().to_string();
  d["vdmod_decimal"] = modified.evaluated.to_string(ctx.digits());
  return d;
}

const fal::Catalog& catalog_or_builtin(const std::optional<fal::Catalog>& catalog, fal::Catalog& storage) {
  if (catalog) return *catalog;
  storage = fal::Catalog::builtin();
  return storage;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact calculus of FAL volume densities";

  auto base = py::register_exception<fal::Error>(m, "FalError");
  py::register_exception<fal::ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<fal::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<fal::DomainError>(m, "DomainError", base.ptr());
  py::register_exception<fal::CapExceededError>(m, "CapExceededError", base.ptr());

  py::class_<fal::Catalog>(m, "Catalog")
      .def_static("builtin", &fal::Catalog::builtin)
      .def("names", &fal::Catalog::names)
      .def("__len__", &fal::Catalog::size)
      .def("__contains__", [](const fal::Catalog& c, const std::string& name) { return c.contains(name); })
      .def("to_json", &fal::save_catalog)
      .def("__eq__", [](const fal::Catalog& a, const fal::Catalog& b) { return a == b; });

  m.def("load_catalog", [](const std::string& text) { return fal::load_catalog(text); }, py::arg("text"),
        "Parse a catalog JSON document.");
  m.def("load_catalog_file", [](const std::string& path) { return fal::load_catalog_file(path); }, py::arg("path"));

  m.def(
      "constants",
      [](int digits) {
        const fal::PrecisionContext ctx(digits);
        const auto bits = ctx.working_bits();
        py::dict d;
        d["v_oct"] = fal::v_oct(ctx).to_string(digits);
        d["v_tet"] = fal::v_tet(ctx).to_string(digits);
        d["2v_oct"] = (fal::BigDecimal(2, bits) * fal::v_oct(ctx)).to_string(digits);
        d["10v_tet"] = (fal::BigDecimal(10, bits) * fal::v_tet(ctx)).to_string(digits);
        return d;
      },
      py::arg("digits") = fal::PrecisionContext::kDefaultDigits);

  m.def(
      "lobachevsky",
      [](const std::string& pi_fraction, int digits) {
        const fal::PrecisionContext ctx(digits);
        return fal::lobachevsky_pi_fraction(fal::parse_rational(pi_fraction), ctx).to_string(digits);
      },
      py::arg("pi_fraction"), py::arg("digits") = fal::PrecisionContext::kDefaultDigits,
      "Lobachevsky function at pi_fraction * pi, e.g. \"1/4\".");

  m.def(
      "validate",
      [](const fal::Catalog& catalog, int digits) {
        const fal::PrecisionContext ctx(digits);
        py::list out;
        for (const auto& [name, link] : catalog.entries()) {
          for (const auto& diagnostic : fal::validate_entry(link, ctx)) {
            py::dict d;
            d["name"] = name;
            d["code"] = diagnostic.code;
            d["message"] = diagnostic.message;
            out.append(d);
          }
        }
        return out;
      },
      py::arg("catalog"), py::arg("digits") = fal::PrecisionContext::kDefaultDigits);

  m.def(
      "density",
      [](const std::string& recipe, std::optional<fal::Catalog> catalog, int digits) {
        const fal::PrecisionContext ctx(digits);
        fal::Catalog storage;
        return density_dict(fal::parse_recipe(recipe, catalog_or_builtin(catalog, storage)), ctx);
      },
      py::arg("recipe"), py::arg("catalog") = py::none(), py::arg("digits") = fal::PrecisionContext::kDefaultDigits);

  m.def(
      "approximate",
      [](const std::string& target, const std::string& l1, const std::string& l2, const std::string& eps,
         const std::string& mode, std::optional<fal::Catalog> catalog, int digits, const py::int_& max_denominator) {
        const fal::PrecisionContext ctx(digits);
        fal::Catalog storage;
        const auto& cat = catalog_or_builtin(catalog, storage);
        fal::ApproxOptions options;
        options.max_denominator = from_int(max_denominator);
        const auto value = fal::SymbolicValue::parse(target);
        const auto tolerance = fal::parse_rational(eps);
        if (mode != "vd" && mode != "vdmod") throw fal::DomainError("mode must be 'vd' or 'vdmod'");
        const auto recipe = mode == "vd" ? fal::approximate_vd(value, cat.at(l1), cat.at(l2), tolerance, ctx, options)
                                         : fal::approximate_vd_mod(value, cat.at(l1), cat.at(l2), tolerance, ctx, options);
        auto d = density_dict(recipe.composition, ctx);
        d["mode"] = fal::to_string(recipe.mode);
        d["k"] = to_int(recipe.k);
        d["l"] = to_int(recipe.l);
        d["m"] = to_int(recipe.m);
        d["error"] = recipe.error.to_string(digits);
        return d;
      },
      py::arg("target"), py::arg("l1"), py::arg("l2"), py::arg("eps"), py::arg("mode") = "vd",
      py::arg("catalog") = py::none(), py::arg("digits") = fal::PrecisionContext::kDefaultDigits,
      py::arg("max_denominator") = py::int_(1'000'000'000));

  m.def(
      "best_rational_approximations",
      [](const std::string& r, const py::int_& max_denominator) {
        py::list out;
        for (const auto& c : fal::best_rational_approximations(fal::parse_rational(r), from_int(max_denominator))) {
          out.append(py::make_tuple(to_int(c.numerator), to_int(c.denominator)));
        }
        return out;
      },
      py::arg("r"), py::arg("max_denominator"));

  m.def(
      "bounds",
      [](const py::int_& a, int digits) {
        const fal::PrecisionContext ctx(digits);
        const auto count = from_int(a);
        py::dict d;
        d["chi"] = to_int(fal::euler_characteristic(count));
        d["volume_lower_bound"] = fal::miyamoto_volume_lower_bound(count, ctx).decimal.to_string(digits);
        d["vd_lower_bound"] = fal::vd_lower_bound(count, ctx).decimal.to_string(digits);
        return d;
      },
      py::arg("a"), py::arg("digits") = fal::PrecisionContext::kDefaultDigits);

  m.def(
      "certify",
      [](const std::string& density, int digits) {
        const fal::PrecisionContext ctx(digits);
        const auto certificate = fal::max_augmentations_below(fal::SymbolicValue::parse(density), ctx);
        py::dict d;
        d["threshold"] = certificate.threshold_decimal.to_string(digits);
        d["max_augmentations"] = to_int(certificate.max_augmentations);
        d["statement"] = certificate.statement;
        return d;
      },
      py::arg("density"), py::arg("digits") = fal::PrecisionContext::kDefaultDigits);

  m.def(
      "classify",
      [](const std::string& density, int digits) {
        const fal::PrecisionContext ctx(digits);
        const auto c = fal::classify(fal::SymbolicValue::parse(density), ctx);
        return py::make_tuple(fal::to_string(c.window), c.near_boundary);
      },
      py::arg("density"), py::arg("digits") = fal::PrecisionContext::kDefaultDigits,
      "Returns (window name, near_boundary).");

  m.def(
      "scan_csv",
      [](std::optional<fal::Catalog> catalog, long budget, int digits) {
        const fal::PrecisionContext ctx(digits);
        fal::Catalog storage;
        return fal::scan_to_csv(fal::spectrum_scan(catalog_or_builtin(catalog, storage), budget, ctx), ctx);
      },
      py::arg("catalog") = py::none(), py::arg("budget") = 10,
      py::arg("digits") = fal::PrecisionContext::kDefaultDigits);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = fal::cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the fal-spectrum command line; returns (exit code, stdout, stderr).");

#ifdef FAL_VERSION_INFO
  m.attr("__version__") = FAL_VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
