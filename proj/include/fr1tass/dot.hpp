#pragma once

#include <sstream>
#include <string>

#include "model.hpp"

namespace fr1tass {

namespace detail {

inline std::string dot_quote(const std::string& s) {
	std::string out = "\"";
	for (char c : s) {
		if (c == '"' || c == '\\')
			out += '\\';
		out += c;
	}
	return out + '"';
}

} // namespace detail

/// Graphviz rendering: one node per state, one edge per transition labelled
/// `a/b` or `a/λ`.
inline std::string to_dot(const Machine& m) {
	using detail::dot_quote;
	std::ostringstream out;
	out << "digraph fr1tass {\n";
	out << "  rankdir=LR;\n";
	out << "  __start [shape=point];\n";
	for (const auto& q : m.states)
		out << "  " << dot_quote(q) << " [shape=" << (m.is_accepting(q) ? "doublecircle" : "circle") << "];\n";
	out << "  __start -> " << dot_quote(m.start) << ";\n";
	for (const auto& q : m.states) {
		for (const auto& a : m.tape_alphabet) {
			const auto* t = m.find(q, a);
			if (!t)
				continue;
			out << "  " << dot_quote(q) << " -> " << dot_quote(t->target) << " [label="
			    << dot_quote(a + "/" + (t->write ? *t->write : std::string("λ"))) << "];\n";
		}
	}
	out << "}\n";
	return out.str();
}

} // namespace fr1tass
