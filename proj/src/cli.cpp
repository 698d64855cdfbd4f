#include "fal/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fal/approx.hpp"
#include "fal/bounds.hpp"
#include "fal/calculus.hpp"
#include "fal/catalog.hpp"
#include "fal/error.hpp"
#include "fal/numerics.hpp"
#include "fal/symbolic.hpp"

namespace fal::cli {

namespace {

// Bad flag values detected after CLI11 has accepted the command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kTable, kCsv, kJson };

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  // Single-record tables print as "key  value" lines in table format.
  bool record = false;
};

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void render(const Table& table, Format format, std::ostream& out) {
  switch (format) {
    case Format::kCsv: {
      for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_field(table.columns[i]);
      out << "\n";
      for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
        out << "\n";
      }
      return;
    }
    case Format::kJson: {
      auto array = nlohmann::ordered_json::array();
      for (const auto& row : table.rows) {
        nlohmann::ordered_json object;
        for (std::size_t i = 0; i < row.size(); ++i) object[table.columns[i]] = row[i];
        array.push_back(std::move(object));
      }
      out << (table.record && array.size() == 1 ? array[0] : array).dump(2) << "\n";
      return;
    }
    case Format::kTable: {
      if (table.record && table.rows.size() == 1) {
        std::size_t width = 0;
        for (const auto& c : table.columns) width = std::max(width, c.size());
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
          out << table.columns[i] << std::string(width - table.columns[i].size() + 2, ' ') << table.rows[0][i] << "\n";
        }
        return;
      }
      std::vector<std::size_t> widths;
      for (const auto& c : table.columns) widths.push_back(c.size());
      for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
      }
      auto line = [&](const std::vector<std::string>& cells) {
        std::string text;
        for (std::size_t i = 0; i < cells.size(); ++i) {
          text += cells[i];
          if (i + 1 < cells.size()) text += std::string(widths[i] - cells[i].size() + 2, ' ');
        }
        out << text << "\n";
      };
      line(table.columns);
      for (const auto& row : table.rows) line(row);
      return;
    }
  }
}

SymbolicValue parse_value(const std::string& flag, const std::string& text) {
  try {
    return SymbolicValue::parse(text);
  } catch (const ParseError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

Rational parse_rational_flag(const std::string& flag, const std::string& text) {
  Rational value;
  try {
    value = parse_rational(text);
  } catch (const ParseError& e) {
    throw UsageError(flag + ": " + e.what());
  }
  return value;
}

Integer parse_integer(const std::string& flag, const std::string& text) {
  if (text.empty() || !std::all_of(text.begin() + (text[0] == '-' ? 1 : 0), text.end(),
                                   [](char c) { return c >= '0' && c <= '9'; }) ||
      text == "-") {
    throw UsageError(flag + ": not an integer: '" + text + "'");
  }
  return Integer(text, 10);
}

Catalog open_catalog(const std::string& path) {
  return path.empty() ? Catalog::builtin() : load_catalog_file(path);
}

struct Options {
  std::optional<int> digits;
  std::string format = "table";
  std::string output;

  std::string catalog_path;
  std::string recipe;
  std::string l1;
  std::string l2;
  std::string target;
  std::string eps;
  std::string mode = "vd";
  std::string max_denominator = "1000000000";
  std::string augmentations;
  std::string density;
  long budget = 0;
  std::string scan_out;
  std::size_t max_rows = ScanOptions{}.max_rows;
};

PrecisionContext resolve_precision(const Options& options) {
  int digits = PrecisionContext::kDefaultDigits;
  if (options.digits) {
    digits = *options.digits;
  } else if (const char* env = std::getenv("FAL_SPECTRUM_DIGITS"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      digits = std::stoi(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("FAL_SPECTRUM_DIGITS is not an integer: '") + env + "'");
    }
  }
  try {
    return PrecisionContext(digits);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
}

Table constants_table(const PrecisionContext& ctx) {
  const auto oct = v_oct(ctx);
  const auto tet = v_tet(ctx);
  const auto bits = ctx.working_bits();
  const int d = ctx.digits();
  return {{"name", "value"},
          {{"v_oct", oct.to_string(d)},
           {"v_tet", tet.to_string(d)},
           {"2v_oct", (BigDecimal(2, bits) * oct).to_string(d)},
           {"10v_tet", (BigDecimal(10, bits) * tet).to_string(d)}},
          false};
}

Table catalog_table(const Catalog& catalog, const PrecisionContext& ctx) {
  Table table{{"name", "a", "atilde", "c_oct", "c_tet", "remainder", "volume", "vd", "vdmod", "note"}, {}, false};
  for (const auto& [name, link] : catalog.entries()) {
    const auto c = Composition::of(link);
    table.rows.push_back({name, std::to_string(link.augmentations), std::to_string(link.modified_augmentations()),
                          link.volume.c_oct().get_str(), link.volume.c_tet().get_str(),
                          rational_to_decimal_string(link.volume.remainder()),
                          link.volume.evaluate(ctx).to_string(ctx.digits()),
                          vd(c, ctx).evaluated.to_string(ctx.digits()),
                          vd_mod(c, ctx).evaluated.to_string(ctx.digits()), link.note});
  }
  return table;
}

Table validate_table(const Catalog& catalog, const PrecisionContext& ctx) {
  Table table{{"name", "severity", "code", "message"}, {}, false};
  for (const auto& [name, link] : catalog.entries()) {
    const auto diagnostics = validate_entry(link, ctx);
    if (diagnostics.empty()) table.rows.push_back({name, "ok", "", ""});
    for (const auto& d : diagnostics) {
      table.rows.push_back({name, d.severity == Severity::kWarning ? "warning" : "error", d.code, d.message});
    }
  }
  return table;
}

Table density_table(const Composition& c, const PrecisionContext& ctx) {
  const auto vol = volume(c);
  const auto plain = vd(c, ctx);
  const auto modified = vd_mod(c, ctx);
  const int d = ctx.digits();
  return {{"recipe", "volume_exact", "volume_decimal", "a", "atilde", "vd_exact", "vd_decimal", "vdmod_exact",
           "vdmod_decimal"},
          {{c.to_recipe_string(), vol.value().to_string(), vol.evaluate(ctx).to_string(d), augmentations(c).get_str(),
            modified_augmentations(c).get_str(), plain.exact().to_string(), plain.evaluated.to_string(d),
            modified.exact().to_string(), modified.evaluated.to_string(d)}},
          true};
}

Table recipe_table(const Recipe& recipe, const PrecisionContext& ctx) {
  const int d = ctx.digits();
  return {{"mode", "target_exact", "target_decimal", "k", "l", "m", "recipe", "a", "atilde", "vd_exact", "vd_decimal",
           "vdmod_exact", "vdmod_decimal", "error"},
          {{to_string(recipe.mode), recipe.target.to_string(), recipe.target.evaluate(ctx).to_string(d),
            recipe.k.get_str(), recipe.l.get_str(), recipe.m.get_str(), recipe.recipe_string(),
            augmentations(recipe.composition).get_str(), modified_augmentations(recipe.composition).get_str(),
            recipe.achieved_vd.exact().to_string(), recipe.achieved_vd.evaluated.to_string(d),
            recipe.achieved_vd_mod.exact().to_string(), recipe.achieved_vd_mod.evaluated.to_string(d),
            recipe.error.to_string(d)}},
          true};
}

Table bounds_table(const Integer& a, const PrecisionContext& ctx) {
  const auto volume_bound = miyamoto_volume_lower_bound(a, ctx);
  const auto density_bound = vd_lower_bound(a, ctx);
  const int d = ctx.digits();
  return {{"a", "chi", "volume_lower_bound_exact", "volume_lower_bound_decimal", "vd_lower_bound_exact",
           "vd_lower_bound_decimal"},
          {{a.get_str(), euler_characteristic(a).get_str(), volume_bound.exact.to_string(),
            volume_bound.decimal.to_string(d), density_bound.exact.to_string(), density_bound.decimal.to_string(d)}},
          true};
}

Table certificate_table(const Certificate& certificate, const PrecisionContext& ctx) {
  return {{"threshold_exact", "threshold_decimal", "max_augmentations", "statement"},
          {{certificate.threshold.to_string(), certificate.threshold_decimal.to_string(ctx.digits()),
            certificate.max_augmentations.get_str(), certificate.statement}},
          true};
}

Table classification_table(const SymbolicValue& density, const Classification& c, const PrecisionContext& ctx) {
  return {{"density_exact", "density_decimal", "class", "near_boundary"},
          {{density.to_string(), density.evaluate(ctx).to_string(ctx.digits()), to_string(c.window),
            c.near_boundary ? "true" : "false"}},
          true};
}

Table scan_table(const std::vector<ScanRow>& rows, const PrecisionContext& ctx) {
  Table table{{"recipe", "a", "atilde", "vd_exact", "vd_decimal", "vdmod_exact", "vdmod_decimal"}, {}, false};
  for (const auto& row : rows) {
    table.rows.push_back({row.composition.to_recipe_string(), row.a.get_str(), row.atilde.get_str(),
                          row.vd.exact().to_string(), row.vd.evaluated.to_string(ctx.digits()),
                          row.vd_mod.exact().to_string(), row.vd_mod.evaluated.to_string(ctx.digits())});
  }
  return table;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact calculus of FAL volume densities: belted sums, density approximation, discreteness bounds",
               "fal-spectrum"};
  app.fallthrough();
  app.require_subcommand(1);
  Options options;
  app.add_option("--digits", options.digits, "Decimal digits of precision (>= 20; default 30, or $FAL_SPECTRUM_DIGITS)");
  app.add_option("--format", options.format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--output", options.output, "Write data to this file instead of standard output");

  auto* constants = app.add_subcommand("constants", "Print v_oct, v_tet, 2v_oct and 10v_tet");

  auto* catalog = app.add_subcommand("catalog", "Catalog management");
  catalog->require_subcommand(1);
  auto* catalog_list = catalog->add_subcommand("list", "List the entries of a catalog file");
  catalog_list->add_option("file", options.catalog_path, "Catalog JSON file")->required();

  auto* validate = app.add_subcommand("validate", "Load a catalog file and report diagnostics");
  validate->add_option("file", options.catalog_path, "Catalog JSON file")->required();

  auto* density = app.add_subcommand("density", "Volume, augmentations and densities of a belted-sum recipe");
  density->add_option("catalog", options.catalog_path, "Catalog JSON file (built-in entries only if omitted)");
  density->add_option("--recipe", options.recipe, "Recipe such as \"L41*2,S*3\"")->required();

  auto* approximate = app.add_subcommand("approximate", "Build a recipe whose density approximates a target");
  approximate->add_option("catalog", options.catalog_path, "Catalog JSON file (built-in entries only if omitted)");
  approximate->add_option("--l1", options.l1, "First base link")->required();
  approximate->add_option("--l2", options.l2, "Second base link")->required();
  approximate->add_option("--target", options.target, "Target density, e.g. 9 or \"3/2*voct+5*vtet\"")->required();
  approximate->add_option("--eps", options.eps, "Tolerance, e.g. 1e-6")->required();
  approximate->add_option("--mode", options.mode, "Approximate vd or the modified density vdmod")
      ->check(CLI::IsMember({"vd", "vdmod"}));
  approximate->add_option("--max-denominator", options.max_denominator, "Cap on the convergent denominator");

  auto* bounds = app.add_subcommand("bounds", "Euler characteristic and lower bounds for a augmentations");
  bounds->add_option("--a", options.augmentations, "Number of augmentations (>= 2)")->required();

  auto* certify = app.add_subcommand("certify", "Finiteness certificate for a density in [v_oct, 2v_oct)");
  certify->add_option("--density", options.density, "Density threshold")->required();

  auto* classify_cmd = app.add_subcommand("classify", "Window of the spectrum containing a density");
  classify_cmd->add_option("--density", options.density, "Density")->required();

  auto* scan = app.add_subcommand("scan", "Enumerate belted sums of catalog entries up to a budget on sum(k*atilde)");
  scan->add_option("catalog", options.catalog_path, "Catalog JSON file (built-in entries only if omitted)");
  scan->add_option("--budget", options.budget, "Budget on the total modified augmentation count")->required();
  scan->add_option("--out", options.scan_out, "Write the rows as CSV to this file");
  scan->add_option("--max-rows", options.max_rows, "Refuse scans with more rows than this");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsageError;
  }

  try {
    const auto ctx = resolve_precision(options);
    const Format format = options.format == "csv" ? Format::kCsv : options.format == "json" ? Format::kJson
                                                                                             : Format::kTable;
    std::ofstream file;
    if (!options.output.empty()) {
      file.open(options.output, std::ios::binary);
      if (!file) throw UsageError("cannot open output file '" + options.output + "'");
    }
    std::ostream& data = options.output.empty() ? out : file;

    if (constants->parsed()) {
      render(constants_table(ctx), format, data);
    } else if (catalog_list->parsed()) {
      render(catalog_table(load_catalog_file(options.catalog_path), ctx), format, data);
    } else if (validate->parsed()) {
      render(validate_table(load_catalog_file(options.catalog_path), ctx), format, data);
    } else if (density->parsed()) {
      const auto cat = open_catalog(options.catalog_path);
      render(density_table(parse_recipe(options.recipe, cat), ctx), format, data);
    } else if (approximate->parsed()) {
      const auto cat = open_catalog(options.catalog_path);
      const auto target = parse_value("--target", options.target);
      const auto eps = parse_rational_flag("--eps", options.eps);
      ApproxOptions approx_options;
      approx_options.max_denominator = parse_integer("--max-denominator", options.max_denominator);
      const auto& l1 = cat.at(options.l1);
      const auto& l2 = cat.at(options.l2);
      const auto recipe = options.mode == "vdmod" ? approximate_vd_mod(target, l1, l2, eps, ctx, approx_options)
                                                  : approximate_vd(target, l1, l2, eps, ctx, approx_options);
      render(recipe_table(recipe, ctx), format, data);
    } else if (bounds->parsed()) {
      render(bounds_table(parse_integer("--a", options.augmentations), ctx), format, data);
    } else if (certify->parsed()) {
      render(certificate_table(max_augmentations_below(parse_value("--density", options.density), ctx), ctx), format,
             data);
    } else if (classify_cmd->parsed()) {
      const auto value = parse_value("--density", options.density);
      render(classification_table(value, classify(value, ctx), ctx), format, data);
    } else if (scan->parsed()) {
      const auto cat = open_catalog(options.catalog_path);
      const auto rows = spectrum_scan(cat, options.budget, ctx, ScanOptions{options.max_rows});
      if (!options.scan_out.empty()) {
        std::ofstream csv(options.scan_out, std::ios::binary);
        if (!csv) throw UsageError("cannot open '" + options.scan_out + "' for writing");
        csv << scan_to_csv(rows, ctx);
        err << "wrote " << rows.size() << " rows to " << options.scan_out << "\n";
      } else {
        render(scan_table(rows, ctx), format, data);
      }
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
}

}  // namespace fal::cli
