#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mldlab/enumerate.hpp"
#include "mldlab/errors.hpp"
#include "mldlab/json_io.hpp"
#include "mldlab/parallel.hpp"
#include "mldlab/theorems.hpp"

namespace {

using mldlab::io::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvariant = 3;

std::vector<long> parse_weights(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw mldlab::ParseError("weights: empty entry");
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(item, &pos);
    } catch (const std::exception&) {
      throw mldlab::ParseError("weights: '" + item + "' is not an integer");
    }
    if (pos != item.size()) throw mldlab::ParseError("weights: '" + item + "' is not an integer");
    if (v < 1) throw mldlab::ParseError("weights: entries must be positive");
    out.push_back(v);
  }
  if (out.empty()) throw mldlab::ParseError("weights: none given");
  return out;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw mldlab::ParseError("cannot open output file: " + output_path);
  out << text << "\n";
}

std::string join_witnesses(const std::vector<long>& ws) {
  std::string s;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(ws[i]);
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact minimal log discrepancies of cyclic quotient singularities"};
  app.require_subcommand(1);
  int jobs = mldlab::default_jobs();
  std::string output_path;
  app.add_option("--jobs", jobs, "worker threads (default: MLDLAB_JOBS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", output_path, "write the artifact to a file instead of stdout");

  // mld
  auto* cmd_mld = app.add_subcommand("mld", "exact mld of 1/r(a_1,...,a_d)");
  long mld_r = 0;
  std::string mld_weights, mld_format = "text";
  cmd_mld->add_option("--r", mld_r, "group order r")->required()->check(CLI::PositiveNumber);
  cmd_mld->add_option("--weights", mld_weights, "comma-separated weights a_1,...,a_d")->required();
  cmd_mld->add_option("--format", mld_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  // enumerate
  auto* cmd_enum = app.add_subcommand("enumerate", "members of the 5-dimensional A-sets");
  int enum_level = 0;
  std::string enum_eps;
  long enum_rmin = 1, enum_rmax = 0;
  bool enum_bar = false;
  cmd_enum->add_option("--level", enum_level, "set level 1..5")
      ->required()
      ->check(CLI::Range(1, 5));
  cmd_enum->add_option("--eps", enum_eps, "positive rational \"p/q\"; keep mld > 2-eps");
  cmd_enum->add_option("--r-min", enum_rmin, "smallest group order");
  cmd_enum->add_option("--r-max", enum_rmax, "largest group order")->required();
  cmd_enum->add_flag("--bar", enum_bar, "keep only members with mld = (sum of weights)/r");

  // solve
  auto* cmd_solve = app.add_subcommand("solve", "solve a floor-sum system from JSON");
  std::string solve_path;
  cmd_solve->add_option("input", solve_path, "floor system JSON file")->required();

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "run checks from the result catalog");
  std::vector<std::string> verify_ids;
  long gap3d_rmax = 200, gap5d_rmax = 60;
  cmd_verify->add_option("ids", verify_ids, "catalog ids or 'all'")->required();
  cmd_verify->add_option("--gap3d-rmax", gap3d_rmax, "sweep limit for gap3d");
  cmd_verify->add_option("--gap5d-rmax", gap5d_rmax, "sweep limit for gap5d");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_mld->parsed()) {
      mldlab::CyclicQuotient cq(mld_r, parse_weights(mld_weights));
      mldlab::MldResult res = mldlab::mld(cq);
      if (mld_format == "json")
        emit(mldlab::io::to_json(res).dump(2), output_path);
      else
        emit(res.value.str() + ", j=" + join_witnesses(res.witnesses), output_path);
      return kExitOk;
    }

    if (cmd_enum->parsed()) {
      std::optional<mldlab::Rational> eps;
      if (!enum_eps.empty()) {
        eps = mldlab::Rational::parse(enum_eps);
        if (!(*eps > mldlab::Rational(0)))
          throw mldlab::ParseError("--eps must be positive");
      }
      if (enum_rmin < 1 || enum_rmax < enum_rmin)
        throw mldlab::ParseError("need 1 <= --r-min <= --r-max");
      auto entries = mldlab::enumerate_a_members(enum_level, eps, enum_rmin, enum_rmax,
                                                 enum_bar, jobs);
      json out = json::array();
      for (const auto& e : entries) {
        json row = mldlab::io::to_json(e.cq);
        json m = mldlab::io::to_json(e.membership);
        row["mld"] = m["mld"];
        row["bar"] = m["bar"];
        row["roles"] = m["roles"];
        out.push_back(std::move(row));
      }
      std::cerr << "enumerate: " << entries.size() << " members\n";
      emit(out.dump(2), output_path);
      return kExitOk;
    }

    if (cmd_solve->parsed()) {
      std::ifstream in(solve_path);
      if (!in) throw mldlab::ParseError("cannot open input file: " + solve_path);
      std::stringstream buf;
      buf << in.rdbuf();
      mldlab::FloorSystem sys = mldlab::io::floor_system_from_json(
          mldlab::io::parse_text(buf.str()));
      mldlab::BoxSet result = mldlab::solve(sys, {mldlab::OrderingStage::kPerStep, jobs});
      emit(mldlab::io::to_json(result).dump(2), output_path);
      return kExitOk;
    }

    if (cmd_verify->parsed()) {
      std::vector<std::string> ids;
      for (const auto& id : verify_ids) {
        if (id == "all") {
          ids = mldlab::theorem_ids();
          break;
        }
        if (!mldlab::is_theorem_id(id)) throw mldlab::ParseError("unknown catalog id: " + id);
        ids.push_back(id);
      }
      mldlab::RunOptions opts;
      opts.jobs = jobs;
      opts.progress = &std::cerr;
      opts.gap3d_rmax = gap3d_rmax;
      opts.gap5d_rmax = gap5d_rmax;
      json out = json::array();
      bool all_ok = true;
      for (const auto& id : ids) {
        mldlab::TheoremReport rep = mldlab::run_theorem(id, opts);
        std::cerr << id << ": " << mldlab::verify_status_name(rep.status) << " ("
                  << rep.runtime_ms << " ms)\n";
        all_ok = all_ok && rep.status == mldlab::VerifyStatus::kVerified;
        out.push_back(mldlab::report_to_json(rep));
      }
      emit(out.dump(2), output_path);
      return all_ok ? kExitOk : kExitVerifyFailed;
    }
  } catch (const mldlab::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mldlab::InvariantError& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
