#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "model.hpp"

namespace fr1tass {

/// A rejected machine file. `code` is set when the problem is one of the
/// structural invariants rather than plain syntax.
class ParseError : public Error {
public:
	ParseError(std::size_t line, std::optional<ViolationCode> code, std::string reason)
	    : Error(format(line, code, reason)), line_(line), code_(code), reason_(std::move(reason)) {}

	std::size_t line() const { return line_; }
	std::optional<ViolationCode> code() const { return code_; }
	const std::string& reason() const { return reason_; }

private:
	static std::string format(std::size_t line, std::optional<ViolationCode> code, const std::string& reason) {
		std::string out = "line " + std::to_string(line) + ": ";
		if (code)
			out += std::string(to_string(*code)) + ": ";
		return out + reason;
	}

	std::size_t line_;
	std::optional<ViolationCode> code_;
	std::string reason_;
};

struct ParseOutcome {
	std::optional<Machine> machine; // absent when the header is unusable
	std::vector<ParseError> errors;

	bool ok() const { return machine && errors.empty(); }
};

namespace detail {

inline std::vector<std::string> split_tokens(std::string_view line) {
	std::vector<std::string> out;
	std::size_t i = 0;
	while (i < line.size()) {
		while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
			++i;
		std::size_t j = i;
		while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
			++j;
		if (j > i)
			out.emplace_back(line.substr(i, j - i));
		i = j;
	}
	return out;
}

inline std::string_view strip_comment(std::string_view line) {
	auto pos = line.find("#!");
	return pos == std::string_view::npos ? line : line.substr(0, pos);
}

/// Line-oriented reader shared by the machine, DFA and PCP file formats:
/// yields (line number, tokens) for every non-blank, comment-stripped line.
inline std::vector<std::pair<std::size_t, std::vector<std::string>>> tokenized_lines(std::string_view text) {
	std::vector<std::pair<std::size_t, std::vector<std::string>>> out;
	std::size_t line_no = 0;
	std::size_t pos = 0;
	while (pos <= text.size()) {
		auto nl = text.find('\n', pos);
		auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
		++line_no;
		auto tokens = split_tokens(strip_comment(line));
		if (!tokens.empty())
			out.emplace_back(line_no, std::move(tokens));
		if (nl == std::string_view::npos)
			break;
		pos = nl + 1;
	}
	return out;
}

} // namespace detail

/// Parses the machine file format, collecting every diagnostic it can.
inline ParseOutcome parse_machine_report(std::string_view text) {
	ParseOutcome outcome;
	auto& errors = outcome.errors;
	auto fail = [&](std::size_t line, std::string reason, std::optional<ViolationCode> code = std::nullopt) {
		errors.emplace_back(line, code, std::move(reason));
	};

	static constexpr std::string_view header[] = {"input:", "tape:", "start:", "accept:", "mode:"};
	auto lines = detail::tokenized_lines(text);
	std::size_t cursor = 0;
	Machine m;
	std::size_t input_line = 0;

	for (std::size_t h = 0; h < std::size(header); ++h) {
		if (cursor >= lines.size() || lines[cursor].second[0] != header[h]) {
			std::size_t at = cursor < lines.size() ? lines[cursor].first : (lines.empty() ? 1 : lines.back().first);
			fail(at, "expected '" + std::string(header[h]) + "' directive");
			return outcome;
		}
		const auto& [line, tokens] = lines[cursor++];
		std::vector<std::string> args(tokens.begin() + 1, tokens.end());
		switch (h) {
		case 0:
			input_line = line;
			for (const auto& a : args) {
				if (!is_valid_letter_name(a))
					fail(line, "invalid letter name '" + a + "'");
				else if (!m.input_alphabet.insert(a).second)
					fail(line, "duplicate input letter '" + a + "'");
			}
			break;
		case 1:
			for (const auto& a : args) {
				if (!is_valid_letter_name(a))
					fail(line, "invalid letter name '" + a + "'");
				else if (!m.tape_alphabet.push_back(a))
					fail(line, "duplicate tape letter '" + a + "'");
			}
			break;
		case 2:
			if (args.size() != 1 || !is_valid_state_name(args[0])) {
				fail(line, "'start:' takes exactly one state name");
				return outcome;
			}
			m.start = args[0];
			m.add_state(m.start);
			break;
		case 3:
			for (const auto& q : args) {
				if (!is_valid_state_name(q)) {
					fail(line, "invalid state name '" + q + "'");
					continue;
				}
				m.accepting.insert(q);
				m.add_state(q);
			}
			break;
		case 4:
			if (args.size() == 1 && args[0] == "AS")
				m.mode = AcceptMode::AS;
			else if (args.size() == 1 && args[0] == "ET")
				m.mode = AcceptMode::ET;
			else
				fail(line, "'mode:' must be AS or ET");
			break;
		}
	}

	for (const auto& s : m.input_alphabet)
		if (!m.tape_alphabet.contains(s))
			fail(input_line, "input letter '" + s + "' is not in the tape alphabet", ViolationCode::SigmaNotInGamma);

	if (cursor < lines.size() && lines[cursor].second[0] == "empty:") {
		const auto& [line, tokens] = lines[cursor++];
		if (tokens.size() != 2 || (tokens[1] != "true" && tokens[1] != "false"))
			fail(line, "'empty:' must be true or false");
		else if (m.mode != AcceptMode::AS)
			fail(line, "'empty:' is only meaningful in AS mode");
		else
			m.accepts_empty = tokens[1] == "true";
	}

	StateList sources;
	for (; cursor < lines.size(); ++cursor) {
		const auto& [line, tokens] = lines[cursor];
		if (tokens[0] != "trans:") {
			fail(line, "unexpected directive '" + tokens[0] + "'");
			continue;
		}
		if (tokens.size() != 6 || tokens[3] != "->") {
			fail(line, "expected 'trans: <state> <letter> -> <state> <letter|->'");
			continue;
		}
		const auto& q = tokens[1];
		const auto& a = tokens[2];
		const auto& p = tokens[4];
		const auto& out = tokens[5];
		if (!is_valid_state_name(q) || !is_valid_state_name(p)) {
			fail(line, "invalid state name");
			continue;
		}
		auto read_rank = m.tape_alphabet.rank(a);
		if (!read_rank) {
			fail(line, "letter '" + a + "' is not in the tape alphabet", ViolationCode::UnknownLetter);
			continue;
		}
		std::optional<Letter> write;
		if (out != "-") {
			auto write_rank = m.tape_alphabet.rank(out);
			if (!write_rank) {
				fail(line, "letter '" + out + "' is not in the tape alphabet", ViolationCode::UnknownLetter);
				continue;
			}
			if (*write_rank > *read_rank) {
				fail(line, "writing '" + out + "' over '" + a + "' violates the freezing order",
				     ViolationCode::NonFreezing);
				continue;
			}
			write = out;
		}
		if (m.find(q, a)) {
			fail(line, "second transition for (" + q + ", " + a + ")", ViolationCode::DuplicateTransition);
			continue;
		}
		m.set_transition(q, a, p, write);
		sources.insert(q);
	}

	// Transition sources first, in line order, so that serializing the parsed
	// machine reproduces the grouping of the file.
	for (const auto& q : m.states)
		sources.insert(q);
	m.states = std::move(sources);
	outcome.machine = std::move(m);
	return outcome;
}

/// Parses a machine file; throws the first diagnostic as a ParseError.
inline Machine parse_machine(std::string_view text) {
	auto outcome = parse_machine_report(text);
	if (!outcome.errors.empty())
		throw outcome.errors.front();
	return std::move(*outcome.machine);
}

namespace detail {

inline void directive(std::ostringstream& out, std::string_view key, const std::vector<std::string>& args) {
	std::string line(key);
	if (!args.empty()) {
		line.resize(std::max<std::size_t>(line.size() + 1, 8), ' ');
		for (std::size_t i = 0; i < args.size(); ++i)
			line += (i ? " " : "") + args[i];
	}
	out << line << '\n';
}

} // namespace detail

/// Canonical text form. Transitions are grouped by source state in state
/// order, and within a state listed from the largest read letter down.
inline std::string serialize_machine(const Machine& m) {
	std::ostringstream out;
	for (const auto& [key, value] : m.notes)
		out << "#! " << key << " = " << value << '\n';
	detail::directive(out, "input:", m.ordered_input());
	detail::directive(out, "tape:", m.tape_alphabet.letters());
	detail::directive(out, "start:", {m.start});
	std::vector<std::string> accepting;
	for (const auto& q : m.states)
		if (m.is_accepting(q))
			accepting.push_back(q);
	detail::directive(out, "accept:", accepting);
	detail::directive(out, "mode:", {std::string(to_string(m.mode))});
	if (m.mode == AcceptMode::AS && m.accepts_empty)
		detail::directive(out, "empty:", {"true"});
	for (const auto& q : m.states) {
		for (std::size_t r = m.tape_alphabet.size(); r-- > 0;) {
			const auto& a = m.tape_alphabet[r];
			if (const auto* t = m.find(q, a))
				detail::directive(out, "trans:", {q, a, "->", t->target, t->write ? *t->write : "-"});
		}
	}
	return out.str();
}

} // namespace fr1tass
