#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fr1tass/fr1tass.hpp"

namespace fr1tass::cli {

// Exit codes.
inline constexpr int ok = 0;
inline constexpr int negative = 1;
inline constexpr int failure = 2;

namespace detail {

/// Raised for unusable user input; carries the message printed before exit 2.
struct UsageError : Error {
	using Error::Error;
};

inline std::string read_file(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw UsageError("cannot read '" + path + "'");
	std::ostringstream buf;
	buf << in.rdbuf();
	return buf.str();
}

inline Machine load_machine(const std::string& path) { return parse_machine(read_file(path)); }

inline void write_output(const std::string& text, const std::string& path, std::ostream& out) {
	if (path.empty() || path == "-") {
		out << text;
		return;
	}
	std::ofstream file(path, std::ios::binary);
	if (!file || !(file << text))
		throw UsageError("cannot write '" + path + "'");
}

inline std::vector<std::size_t> parse_indices(const std::string& text) {
	std::vector<std::size_t> out;
	std::stringstream in(text);
	std::string item;
	while (std::getline(in, item, ',')) {
		if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
			throw UsageError("bad index '" + item + "' in --indices");
		out.push_back(std::stoul(item));
	}
	return out;
}

} // namespace detail

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`; the return value is the process exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
	CLI::App app{"Workbench for freezing 1-tag systems with states", "fr1tass"};
	app.require_subcommand(1);
	int code = ok;
	std::function<void()> action;

	// validate
	std::string file_a, file_b, output;
	auto* validate_cmd = app.add_subcommand("validate", "Check a machine file and list every violation");
	validate_cmd->add_option("file", file_a, "Machine file")->required();
	validate_cmd->callback([&] {
		action = [&] {
			auto outcome = parse_machine_report(detail::read_file(file_a));
			for (const auto& e : outcome.errors)
				out << e.what() << '\n';
			if (outcome.machine && outcome.errors.empty()) {
				auto report = validate(*outcome.machine);
				for (const auto& v : report.violations)
					out << to_string(v.code) << ' ' << v.location << ": " << v.message << '\n';
				if (report.ok()) {
					out << "ok\n";
					return;
				}
			}
			code = negative;
		};
	});

	// run
	std::optional<std::string> word, chars;
	bool trace = false;
	auto* run_cmd = app.add_subcommand("run", "Run a machine on one input");
	run_cmd->add_option("file", file_a, "Machine file")->required();
	auto* word_opt = run_cmd->add_option("--word", word, "Input letters, space-separated");
	run_cmd->add_option("--chars", chars, "Input as a string of one-character letters")->excludes(word_opt);
	run_cmd->add_flag("--trace", trace, "Print one line per sweep");
	run_cmd->callback([&] {
		action = [&] {
			auto m = detail::load_machine(file_a);
			Word w;
			if (word) {
				std::istringstream in(*word);
				for (std::string l; in >> l;)
					w.push_back(l);
			} else if (chars) {
				for (char c : *chars)
					w.emplace_back(1, c);
			}
			auto r = fr1tass::run(m, w, RunLimits{std::nullopt, trace});
			out << (trace ? format_trace(r) : verdict_line(r) + "\n");
			code = r.accepted() ? ok : negative;
		};
	});

	// enumerate
	std::size_t max_len = 0;
	auto* enum_cmd = app.add_subcommand("enumerate", "List accepted words up to a length");
	enum_cmd->add_option("file", file_a, "Machine file")->required();
	enum_cmd->add_option("--max-len", max_len, "Longest word to try")->required();
	enum_cmd->callback([&] {
		action = [&] {
			for (const auto& w : enumerate_accepted(detail::load_machine(file_a), max_len))
				out << join_word(w) << '\n';
		};
	});

	// equal
	auto* equal_cmd = app.add_subcommand("equal", "Compare two machines on all words up to a length");
	equal_cmd->add_option("file_a", file_a, "First machine file")->required();
	equal_cmd->add_option("file_b", file_b, "Second machine file")->required();
	equal_cmd->add_option("--max-len", max_len, "Longest word to try")->required();
	equal_cmd->callback([&] {
		action = [&] {
			auto ce = equivalent_up_to(detail::load_machine(file_a), detail::load_machine(file_b), max_len);
			if (!ce) {
				out << "equivalent\n";
				return;
			}
			auto verdict = [](bool v) { return v ? "accept" : "reject"; };
			out << "counterexample: " << join_word(ce->word) << " (a=" << verdict(ce->verdict_a)
			    << " b=" << verdict(ce->verdict_b) << ")\n";
			code = negative;
		};
	});

	// classify-unary
	auto* classify_cmd = app.add_subcommand("classify-unary", "Exact language of a unary machine without auxiliary letters");
	classify_cmd->add_option("file", file_a, "Machine file")->required();
	classify_cmd->callback([&] {
		action = [&] { out << to_string(classify_unary_noaux(detail::load_machine(file_a))) << '\n'; };
	});

	// transform
	std::string op;
	std::vector<std::string> inputs;
	bool strict = false;
	auto* transform_cmd = app.add_subcommand("transform", "Apply a construction and print the resulting machine");
	transform_cmd
	    ->add_option("op", op, "remove-erasing|as2et|et2as|complement|intersect|union|intersect-seq|union-seq|from-dfa")
	    ->required()
	    ->check(CLI::IsMember({"remove-erasing", "as2et", "et2as", "complement", "intersect", "union",
	                           "intersect-seq", "union-seq", "from-dfa"}));
	transform_cmd->add_option("inputs", inputs, "Input file(s)")->required();
	transform_cmd->add_option("-o,--output", output, "Write here instead of stdout");
	transform_cmd->add_flag("--strict", strict, "complement: refuse erasing input instead of normalizing");
	transform_cmd->callback([&] {
		action = [&] {
			const bool binary = op == "intersect" || op == "union" || op == "intersect-seq" || op == "union-seq";
			if (inputs.size() != (binary ? 2u : 1u))
				throw detail::UsageError("'" + op + "' takes " + (binary ? "two input files" : "one input file"));
			Machine result;
			if (op == "from-dfa") {
				result = from_dfa(parse_dfa(detail::read_file(inputs[0])));
			} else {
				auto a = detail::load_machine(inputs[0]);
				if (op == "remove-erasing")
					result = remove_erasing(a);
				else if (op == "as2et")
					result = as_to_et(a);
				else if (op == "et2as")
					result = et_to_as(a);
				else if (op == "complement")
					result = complement(a, strict);
				else {
					auto b = detail::load_machine(inputs[1]);
					if (op == "intersect")
						result = intersect(a, b);
					else if (op == "union")
						result = union_of(a, b);
					else if (op == "intersect-seq")
						result = intersect_sequential(a, b);
					else
						result = union_sequential(a, b);
				}
			}
			detail::write_output(serialize_machine(result), output, out);
		};
	});

	// gallery
	std::string name;
	std::uint64_t seed = 0;
	std::size_t n_states = 4;
	auto* gallery_cmd = app.add_subcommand("gallery", "Built-in machines");
	gallery_cmd->require_subcommand(1);
	auto* list_cmd = gallery_cmd->add_subcommand("list", "List machine names");
	list_cmd->callback([&] {
		action = [&] {
			for (const auto& n : gallery_names())
				out << n << '\n';
			out << "random-unary\n";
		};
	});
	auto* emit_cmd = gallery_cmd->add_subcommand("emit", "Print a machine file");
	emit_cmd->add_option("name", name, "Machine name (see 'gallery list')")->required();
	emit_cmd->add_option("--seed", seed, "random-unary: seed");
	emit_cmd->add_option("--states", n_states, "random-unary: number of states");
	emit_cmd->add_option("-o,--output", output, "Write here instead of stdout");
	emit_cmd->callback([&] {
		action = [&] {
			std::optional<Machine> m =
			    name == "random-unary" ? std::optional<Machine>(random_unary_noaux(seed, n_states)) : gallery_machine(name);
			if (!m)
				throw detail::UsageError("unknown gallery machine '" + name + "'");
			detail::write_output(serialize_machine(*m), output, out);
		};
	});

	// pcp
	std::string indices;
	auto* pcp_cmd = app.add_subcommand("pcp", "Reduction from the Post correspondence problem");
	pcp_cmd->require_subcommand(1);
	auto* build_cmd = pcp_cmd->add_subcommand("build", "Machine accepting the solution encodings");
	build_cmd->add_option("instance", file_a, "Instance file")->required();
	build_cmd->add_option("-o,--output", output, "Write here instead of stdout");
	build_cmd->callback([&] {
		action = [&] {
			auto p = parse_pcp_instance(detail::read_file(file_a));
			detail::write_output(serialize_machine(pcp_machine(p)), output, out);
		};
	});
	auto* encode_cmd = pcp_cmd->add_subcommand("encode", "Encoding of an index sequence");
	encode_cmd->add_option("instance", file_a, "Instance file")->required();
	encode_cmd->add_option("--indices", indices, "Comma-separated indices, e.g. 1,2")->required();
	encode_cmd->callback([&] {
		action = [&] {
			auto p = parse_pcp_instance(detail::read_file(file_a));
			out << join_word(encode_pcp_candidate(p, detail::parse_indices(indices))) << '\n';
		};
	});

	// dot
	auto* dot_cmd = app.add_subcommand("dot", "Graphviz rendering of a machine");
	dot_cmd->add_option("file", file_a, "Machine file")->required();
	dot_cmd->callback([&] { action = [&] { out << to_dot(detail::load_machine(file_a)); }; });

	try {
		std::reverse(args.begin(), args.end());
		app.parse(args);
	} catch (const CLI::ParseError& e) {
		return app.exit(e, out, err) == 0 ? ok : failure;
	}
	try {
		if (action)
			action();
	} catch (const std::logic_error&) {
		throw;
	} catch (const std::exception& e) {
		err << "error: " << e.what() << '\n';
		return failure;
	}
	return code;
}

} // namespace fr1tass::cli
