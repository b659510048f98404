// Command-line front end: build blockchain matrices, decode and verify them,
// run the surgery toolkit, construct exact pairs, decide sentences about the
// multiverse order, and render matrices as ASCII or SVG diagrams.
//
// Exit codes: 0 success / verified, 1 ran but found violations, 2 usage or
// input-format errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cohen/blockchain.hpp"
#include "cohen/exact_pair.hpp"
#include "cohen/json_io.hpp"
#include "cohen/render.hpp"
#include "cohen/sentence.hpp"
#include "cohen/surgery.hpp"

namespace {

using cohen::io::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cohen::DomainError("cannot open " + path);
  json j;
  in >> j;
  return j;
}

// Inline JSON if the argument starts with '{' or '[', otherwise a file path.
json load_json_arg(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return json::parse(arg);
  return load_json(arg);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cohen::DomainError("cannot write " + path);
  out << text;
}

cohen::IndexSet parse_columns(const std::string& text) {
  std::vector<cohen::Label> labels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) labels.emplace_back(item);
  }
  return cohen::IndexSet(std::move(labels));
}

std::vector<cohen::BitString> parse_bit_list(const std::string& text) {
  std::vector<cohen::BitString> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(cohen::BitString::parse(item));
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(static_cast<std::size_t>(std::stoull(item)));
  }
  return out;
}

std::vector<cohen::DenseStep> dense_steps_from_schedule(const cohen::RequirementSchedule& schedule) {
  std::vector<cohen::DenseStep> steps;
  for (const auto& step : schedule.steps) {
    if (const auto* dense = std::get_if<cohen::DenseStep>(&step)) {
      steps.push_back(*dense);
    } else {
      throw cohen::DomainError("this builder accepts dense steps only");
    }
  }
  return steps;
}

int report_outcome(const cohen::Report& report) {
  std::cout << report.summary() << "\n";
  return report.pass() ? kExitOk : kExitViolation;
}

struct BuildArgs {
  std::string schedule_path;
  std::string obstacles;
  std::string members_path;
  std::string payload;
  std::string out;
  std::uint64_t l = 1;
  std::uint64_t seed = 0;
  std::size_t random_steps = 0;
  int depth = 2;
  std::uint64_t horizon = 4;
  std::string labels = "0,1";
};

int run_build(const std::string& mode, const BuildArgs& args) {
  cohen::BitString payload = cohen::BitString::parse(args.payload);
  cohen::io::SessionRecord record;

  if (mode == "pair") {
    cohen::IndexSet pair = parse_columns(args.labels);
    cohen::RequirementSchedule schedule;
    if (!args.schedule_path.empty()) {
      schedule = cohen::io::schedule_from_json(load_json_arg(args.schedule_path));
    }
    auto steps = dense_steps_from_schedule(schedule);
    record.result = cohen::build_pair(pair, steps, payload);
    record.family = cohen::ObstacleFamily(pair, {pair});
    record.schedule = schedule;
  } else if (mode == "mostowski") {
    std::vector<cohen::IndexSet> members;
    for (const auto& m : load_json_arg(args.members_path)) {
      members.push_back(cohen::io::index_set_from_json(m));
    }
    cohen::RequirementSchedule schedule =
        cohen::io::schedule_from_json(load_json_arg(args.schedule_path));
    auto steps = dense_steps_from_schedule(schedule);
    record.result = cohen::build_mostowski(args.l, members, steps, payload);
    record.family = cohen::family_from_members(cohen::IndexSet::range(args.l + 1), members);
    record.schedule = schedule;
  } else {
    record.family = cohen::io::family_from_json(load_json_arg(args.obstacles));
    if (!args.schedule_path.empty()) {
      record.schedule = cohen::io::schedule_from_json(load_json_arg(args.schedule_path));
    } else if (args.random_steps > 0) {
      record.schedule = cohen::random_schedule(record.family, args.random_steps, payload.size(),
                                               args.seed);
    } else {
      throw cohen::DomainError("build general needs --schedule or --random-steps");
    }
    cohen::BuildOptions options;
    options.separation_depth = args.depth;
    options.separation_horizon = args.horizon;
    record.result = cohen::build_general(record.family, record.schedule, payload, {}, options);
  }
  record.payload = payload;
  write_output(args.out, cohen::io::dump(cohen::io::to_json(record)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for blockchain-coded families of binary prefixes, surgery on them, "
               "exact pairs over towers, and the existential theory of the induced order"};
  app.require_subcommand(1);

  BuildArgs build_args;
  std::string matrix_path, columns_arg, result_path, out_path, format = "ascii";
  std::string tower_path, dense_path, names_path, d0_path, poset_path, map_path;
  std::string sentence_text, requirement_arg;
  std::string f_bits, g_bits, positions_arg, p_bits, x_bits, y_bits, z_bits, xs_arg;
  std::uint64_t horizon = 8;
  std::size_t columns_n = 3;
  std::size_t good_points_n = 6;
  std::uint64_t seed = 0;

  // build pair|mostowski|general
  auto* build = app.add_subcommand("build", "construct a coded matrix");
  build->require_subcommand(1);
  for (const char* mode : {"pair", "mostowski", "general"}) {
    auto* sub = build->add_subcommand(mode);
    sub->add_option("--schedule", build_args.schedule_path, "schedule JSON (file or inline)");
    sub->add_option("--payload", build_args.payload, "payload bits, e.g. 0110")->required();
    sub->add_option("--out", build_args.out, "output path (default stdout)");
    if (std::string(mode) == "mostowski") {
      sub->add_option("--l", build_args.l, "columns 0..l");
      sub->add_option("--members", build_args.members_path, "family members JSON")->required();
    }
    if (std::string(mode) == "general") {
      sub->add_option("--obstacles", build_args.obstacles, "family JSON {\"I\":[...],\"B\":[[...]]}")
          ->required();
      sub->add_option("--random-steps", build_args.random_steps,
                      "generate a seeded schedule of up to this many steps");
      sub->add_option("--seed", build_args.seed, "seed for --random-steps");
      sub->add_option("--depth", build_args.depth, "separation search depth");
      sub->add_option("-K,--horizon", build_args.horizon, "separation decidedness horizon");
    }
    if (std::string(mode) == "pair") {
      sub->add_option("--labels", build_args.labels, "the two column labels (default 0,1)");
    }
  }

  // decode
  auto* decode_cmd = app.add_subcommand("decode", "read the payload back from chosen columns");
  decode_cmd->add_option("--matrix", matrix_path, "matrix or build-record JSON")->required();
  decode_cmd->add_option("--columns", columns_arg, "comma-separated column labels")->required();
  decode_cmd->add_option("--obstacles", build_args.obstacles,
                         "family JSON (needed when --matrix is a bare matrix)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "re-check a build record");
  verify_cmd->add_option("--result", result_path, "build-record JSON")->required();

  // surgery
  auto* surgery = app.add_subcommand("surgery", "graft, immunize, prime, substitute, join, check");
  surgery->require_subcommand(1);
  auto* graft_cmd = surgery->add_subcommand("graft");
  graft_cmd->add_option("--f", f_bits)->required();
  graft_cmd->add_option("--g", g_bits)->required();
  graft_cmd->add_option("--positions", positions_arg, "comma-separated positions")->required();
  auto* immunize_cmd = surgery->add_subcommand("immunize");
  immunize_cmd->add_option("--p", p_bits)->required();
  immunize_cmd->add_option("--requirement", requirement_arg, "requirement JSON")->required();
  auto* prime_cmd = surgery->add_subcommand("prime");
  prime_cmd->add_option("--xs", xs_arg, "comma-separated columns")->required();
  prime_cmd->add_option("--y", y_bits)->required();
  auto* subst_cmd = surgery->add_subcommand("substitute");
  subst_cmd->add_option("--x", x_bits)->required();
  subst_cmd->add_option("--z", z_bits)->required();
  subst_cmd->add_option("--y", y_bits)->required();
  auto* mutable_cmd = surgery->add_subcommand("mutable");
  mutable_cmd->add_option("--n", columns_n, "number of columns")->required();
  mutable_cmd->add_option("--members", build_args.members_path, "member family JSON")->required();
  mutable_cmd->add_option("--payload", build_args.payload)->required();
  mutable_cmd->add_option("--seed", seed);
  mutable_cmd->add_option("--good-points", good_points_n);
  mutable_cmd->add_option("--out", out_path);
  auto* sverify_cmd = surgery->add_subcommand("verify");
  sverify_cmd->add_option("--columns", columns_n, "number of columns")->required();
  sverify_cmd->add_option("--requirements", dense_path, "requirement list JSON")->required();
  sverify_cmd->add_option("--payload", build_args.payload)->required();
  sverify_cmd->add_option("--seed", seed);
  auto* srender_cmd = surgery->add_subcommand("render");
  srender_cmd->add_option("--xs", xs_arg, "comma-separated columns")->required();
  srender_cmd->add_option("--y", y_bits)->required();
  srender_cmd->add_option("--format", format, "ascii or svg");
  srender_cmd->add_option("--out", out_path);

  // exactpair
  auto* exactpair = app.add_subcommand("exactpair", "exact pairs over a tower");
  exactpair->require_subcommand(1);
  for (const char* mode : {"build", "partner", "verify"}) {
    auto* sub = exactpair->add_subcommand(mode);
    sub->add_option("--tower", tower_path, "tower JSON")->required();
    sub->add_option("--dense", dense_path, "requirement list JSON");
    sub->add_option("--names", names_path, "name-pair list JSON");
    sub->add_option("-K,--horizon", horizon, "evaluation horizon");
    if (std::string(mode) == "partner") {
      sub->add_option("--d0", d0_path, "first matrix JSON")->required();
    }
    if (std::string(mode) == "verify") {
      sub->add_option("--result", result_path, "exact-pair result JSON")->required();
    } else {
      sub->add_option("--out", out_path);
    }
  }

  // theory
  auto* theory = app.add_subcommand("theory", "the existential theory of the order");
  theory->require_subcommand(1);
  auto* decide_cmd = theory->add_subcommand("decide");
  decide_cmd->add_option("sentence", sentence_text, "e.g. \"EXISTS x0,x1 : NOT A(x0,x1)\"")
      ->required();
  auto* embed_cmd = theory->add_subcommand("embed");
  embed_cmd->add_option("--poset", poset_path, "poset JSON")->required();
  embed_cmd->add_option("--out", out_path);
  auto* check_emb_cmd = theory->add_subcommand("check-embedding");
  check_emb_cmd->add_option("--map", map_path, "JSON {P, Q, map}")->required();

  // render
  auto* render_cmd = app.add_subcommand("render", "draw a matrix");
  render_cmd->add_option("--result", result_path, "build-record JSON (annotated)");
  render_cmd->add_option("--matrix", matrix_path, "bare matrix JSON");
  render_cmd->add_option("--format", format, "ascii or svg");
  render_cmd->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      for (const char* mode : {"pair", "mostowski", "general"}) {
        if (build->get_subcommand(mode)->parsed()) return run_build(mode, build_args);
      }
    }

    if (decode_cmd->parsed()) {
      json j = load_json_arg(matrix_path);
      cohen::MatrixCondition matrix;
      cohen::ObstacleFamily family;
      if (j.contains("result")) {
        auto record = cohen::io::session_record_from_json(j);
        matrix = record.result.matrix;
        family = record.family;
      } else {
        matrix = cohen::io::matrix_from_json(j);
        if (build_args.obstacles.empty()) {
          throw cohen::DomainError("a bare matrix needs --obstacles");
        }
        family = cohen::io::family_from_json(load_json_arg(build_args.obstacles));
      }
      try {
        cohen::BitString payload = cohen::decode(matrix, parse_columns(columns_arg), family);
        std::cout << payload.str() << "\n";
        return kExitOk;
      } catch (const cohen::NotAnObstacle& e) {
        std::cout << e.what() << "\n";
        return kExitViolation;
      } catch (const cohen::MalformedMatrix& e) {
        std::cout << e.what() << "\n";
        return kExitViolation;
      }
    }

    if (verify_cmd->parsed()) {
      auto record = cohen::io::session_record_from_json(load_json_arg(result_path));
      return report_outcome(
          cohen::verify_generic(record.result, record.family, record.schedule, record.payload));
    }

    if (surgery->parsed()) {
      if (graft_cmd->parsed()) {
        std::cout << cohen::graft(cohen::BitString::parse(f_bits), cohen::BitString::parse(g_bits),
                                  parse_size_list(positions_arg))
                         .str()
                  << "\n";
        return kExitOk;
      }
      if (immunize_cmd->parsed()) {
        auto d = cohen::io::requirement_from_json(load_json_arg(requirement_arg));
        cohen::BitString immune = cohen::immunize(cohen::BitString::parse(p_bits), d);
        std::cout << immune.str() << "\n";
        return kExitOk;
      }
      if (prime_cmd->parsed()) {
        auto primed = cohen::prime(parse_bit_list(xs_arg), cohen::BitString::parse(y_bits));
        for (const auto& col : primed.primed) std::cout << col.str() << "\n";
        return kExitOk;
      }
      if (subst_cmd->parsed()) {
        std::cout << cohen::substitute(cohen::BitString::parse(x_bits),
                                       cohen::BitString::parse(z_bits),
                                       cohen::BitString::parse(y_bits))
                         .str()
                  << "\n";
        return kExitOk;
      }
      if (mutable_cmd->parsed()) {
        std::vector<cohen::IndexSet> members;
        for (const auto& m : load_json_arg(build_args.members_path)) {
          members.push_back(cohen::io::index_set_from_json(m));
        }
        auto rows = cohen::generate_mutable_rows(columns_n, good_points_n, seed);
        auto built = cohen::build_mutable_blockchain(columns_n, rows, members,
                                                     cohen::BitString::parse(build_args.payload));
        json out;
        json cols = json::array();
        for (const auto& c : built.joined_columns) cols.push_back(c.str());
        out["columns"] = cols;
        out["reference"] = built.joined_reference.str();
        out["payload_join"] = built.joined_payload.str();
        json subsets = json::array();
        for (const auto& a : built.row_subsets) subsets.push_back(cohen::io::to_json(a));
        out["row_subsets"] = subsets;
        write_output(out_path, cohen::io::dump(out));
        return kExitOk;
      }
      if (sverify_cmd->parsed()) {
        auto family = cohen::io::requirements_from_json(load_json_arg(dense_path));
        auto inputs = cohen::build_primed_inputs(columns_n, family, seed);
        auto primed = cohen::prime(inputs.xs, inputs.y);
        std::vector<cohen::BitString> subs(columns_n, cohen::BitString::parse(build_args.payload));
        std::vector<std::vector<std::size_t>> subsets;
        for (std::size_t k = 0; k < columns_n; ++k) subsets.push_back({k});
        for (std::size_t i = 0; i < columns_n; ++i) {
          for (std::size_t j = i + 1; j < columns_n; ++j) {
            if (columns_n > 2) subsets.push_back({i, j});
          }
        }
        return report_outcome(cohen::verify_preservation(primed, subsets, family, subs));
      }
      if (srender_cmd->parsed()) {
        auto primed = cohen::prime(parse_bit_list(xs_arg), cohen::BitString::parse(y_bits));
        auto fmt = format == "svg" ? cohen::RenderFormat::Svg : cohen::RenderFormat::Ascii;
        write_output(out_path, cohen::render_primed(primed, fmt));
        return kExitOk;
      }
    }

    if (exactpair->parsed()) {
      auto tower = cohen::io::tower_from_json(load_json_arg(tower_path));
      std::vector<cohen::DenseRequirement> dense;
      if (!dense_path.empty()) dense = cohen::io::requirements_from_json(load_json_arg(dense_path));
      std::vector<std::pair<cohen::FiniteName, cohen::FiniteName>> names;
      if (!names_path.empty()) names = cohen::io::name_pairs_from_json(load_json_arg(names_path));

      if (exactpair->get_subcommand("build")->parsed()) {
        auto result = cohen::build_exact_pair(tower, dense, names, horizon);
        write_output(out_path, cohen::io::dump(cohen::io::to_json(result)));
        return kExitOk;
      }
      if (exactpair->get_subcommand("partner")->parsed()) {
        auto d0 = cohen::io::matrix_from_json(load_json_arg(d0_path));
        auto result = cohen::build_exact_partner(tower, d0, dense, names, horizon);
        write_output(out_path, cohen::io::dump(cohen::io::to_json(result)));
        return kExitOk;
      }
      auto result = cohen::io::exact_pair_result_from_json(load_json_arg(result_path));
      return report_outcome(cohen::verify_exact_pair(result, tower, dense, names, horizon));
    }

    if (theory->parsed()) {
      if (decide_cmd->parsed()) {
        cohen::Sentence sentence = cohen::parse_sentence(sentence_text);
        auto outcome = cohen::decide_sentence(sentence);
        if (outcome.sat) {
          std::cout << "SAT\n" << cohen::io::dump(cohen::io::to_json(*outcome.witness));
        } else {
          std::cout << "UNSAT\n";
        }
        return kExitOk;
      }
      if (embed_cmd->parsed()) {
        auto poset = cohen::io::poset_from_json(load_json_arg(poset_path));
        auto emb = cohen::downset_embedding(poset);
        json image = json::object();
        for (const auto& [name, set] : emb.image) image[name] = cohen::io::to_json(set);
        json out{{"family", cohen::io::to_json(emb.family)}, {"image", image}};
        write_output(out_path, cohen::io::dump(out));
        return kExitOk;
      }
      json j = load_json_arg(map_path);
      auto p = cohen::io::poset_from_json(j.at("P"));
      auto q = cohen::io::poset_from_json(j.at("Q"));
      std::map<std::string, std::string> f;
      for (const auto& [key, value] : j.at("map").items()) f[key] = value.get<std::string>();
      return report_outcome(cohen::check_star_embedding(f, p, q));
    }

    if (render_cmd->parsed()) {
      auto fmt = format == "svg" ? cohen::RenderFormat::Svg : cohen::RenderFormat::Ascii;
      if (!result_path.empty()) {
        auto record = cohen::io::session_record_from_json(load_json_arg(result_path));
        write_output(out_path, cohen::render_matrix(record.result.matrix, &record.result, fmt));
      } else if (!matrix_path.empty()) {
        auto matrix = cohen::io::matrix_from_json(load_json_arg(matrix_path));
        write_output(out_path, cohen::render_matrix(matrix, nullptr, fmt));
      } else {
        throw cohen::DomainError("render needs --result or --matrix");
      }
      return kExitOk;
    }
  } catch (const cohen::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
