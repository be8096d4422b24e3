#pragma once

// Fixtures shared by the unit tests and the acceptance binary.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fr1tass/fr1tass.hpp"

namespace fixtures {

using namespace fr1tass;

/// Every word over `sigma` of length exactly n, in lexicographic order.
inline std::vector<Word> words_of_length(const std::vector<Letter>& sigma, std::size_t n) {
	std::vector<Word> out{Word{}};
	for (std::size_t i = 0; i < n; ++i) {
		std::vector<Word> next;
		for (const auto& w : out)
			for (const auto& a : sigma) {
				next.push_back(w);
				next.back().push_back(a);
			}
		out = std::move(next);
	}
	return out;
}

/// Brute force: simulate every word, no pruning.
inline std::vector<Word> naive_accepted(const Machine& m, std::size_t max_len) {
	CompiledMachine cm(m);
	std::vector<Word> out;
	for (std::size_t n = 0; n <= max_len; ++n)
		for (const auto& w : words_of_length(m.ordered_input(), n))
			if (run(cm, w).accepted())
				out.push_back(w);
	return out;
}

inline Machine machine(std::vector<Letter> sigma, std::vector<Letter> gamma, StateId start, AcceptMode mode) {
	Machine m;
	m.input_alphabet.insert(sigma.begin(), sigma.end());
	m.tape_alphabet = OrderedAlphabet(std::move(gamma));
	m.start = start;
	m.add_state(start);
	m.mode = mode;
	return m;
}

/// AS machine over {a} accepting a+ (every nonempty block).
inline Machine all_a_machine() {
	auto m = machine({"a"}, {"a"}, "s", AcceptMode::AS);
	m.set_transition("s", "a", "f", "a");
	m.accepting = {"f"};
	return m;
}

/// Pure cycle: one state rereading its letter forever.
inline Machine pure_cycle_machine() {
	auto m = machine({"a"}, {"a"}, "q", AcceptMode::ET);
	m.set_transition("q", "a", "q", "a");
	return m;
}

/// Rewrites every b to a in the first sweep, then cycles through three
/// states without changing the tape.
inline Machine handle_then_cycle_machine() {
	auto m = machine({"a", "b"}, {"a", "b"}, "h", AcceptMode::AS);
	m.set_transition("h", "a", "h", "a");
	m.set_transition("h", "b", "c1", "a");
	const std::vector<StateId> cycle{"c1", "c2", "c3"};
	for (std::size_t i = 0; i < cycle.size(); ++i)
		for (const auto& a : {Letter("a"), Letter("b")})
			m.set_transition(cycle[i], a, cycle[(i + 1) % cycle.size()], "a");
	return m;
}

inline DfaSpec dfa(std::vector<Letter> sigma, std::vector<StateId> states, StateId start, std::set<StateId> accepting,
                   std::vector<std::tuple<StateId, Letter, StateId>> edges) {
	DfaSpec d{std::move(sigma), std::move(states), std::move(start), std::move(accepting), {}};
	for (auto& [q, a, p] : edges)
		d.transitions[{q, a}] = p;
	return d;
}

/// a*b
inline DfaSpec dfa_a_star_b() {
	return dfa({"a", "b"}, {"s", "t"}, "s", {"t"}, {{"s", "a", "s"}, {"s", "b", "t"}});
}

/// (aa)*
inline DfaSpec dfa_even_a() {
	return dfa({"a"}, {"e", "o"}, "e", {"e"}, {{"e", "a", "o"}, {"o", "a", "e"}});
}

/// a(aa)*
inline DfaSpec dfa_odd_a() {
	return dfa({"a"}, {"e", "o"}, "e", {"o"}, {{"e", "a", "o"}, {"o", "a", "e"}});
}

/// Words over {a,b} with an even number of b's.
inline DfaSpec dfa_even_b() {
	return dfa({"a", "b"}, {"e", "o"}, "e", {"e"}, {{"e", "a", "e"}, {"e", "b", "o"}, {"o", "a", "o"}, {"o", "b", "e"}});
}

/// Words over {#,a,b} of even length that start with #.
inline DfaSpec dfa_hash_even() {
	return dfa({"#", "a", "b"}, {"s", "o", "e"}, "s", {"e"},
	           {{"s", "#", "o"}, {"o", "#", "e"}, {"o", "a", "e"}, {"o", "b", "e"}, {"e", "#", "o"}, {"e", "a", "o"},
	            {"e", "b", "o"}});
}

/// Complete or partial random DFA over {a,b}.
inline DfaSpec random_dfa(std::uint64_t seed, std::size_t max_states) {
	std::mt19937_64 rng(seed);
	std::size_t n = 1 + rng() % max_states;
	DfaSpec d;
	d.alphabet = {"a", "b"};
	for (std::size_t i = 0; i < n; ++i)
		d.states.push_back("d" + std::to_string(i));
	d.start = d.states[0];
	for (const auto& q : d.states) {
		if (rng() % 2)
			d.accepting.insert(q);
		for (const auto& a : d.alphabet)
			if (rng() % 8 != 0)
				d.transitions[{q, a}] = d.states[rng() % n];
	}
	return d;
}

/// Random AS machine with Σ = Γ = {a < b}; every output respects the order.
inline Machine random_noaux_binary(std::uint64_t seed, std::size_t n_states) {
	std::mt19937_64 rng(seed);
	auto m = machine({"a", "b"}, {"a", "b"}, "r0", AcceptMode::AS);
	std::vector<StateId> names;
	for (std::size_t i = 0; i < n_states; ++i) {
		names.push_back("r" + std::to_string(i));
		m.add_state(names.back());
	}
	for (const auto& q : names) {
		for (const auto& a : {Letter("a"), Letter("b")}) {
			auto roll = rng() % 6;
			if (roll == 0)
				continue;
			const auto& target = names[rng() % n_states];
			if (roll == 1)
				m.set_transition(q, a, target, std::nullopt);
			else if (a == "b" && roll == 2)
				m.set_transition(q, a, target, "b");
			else
				m.set_transition(q, a, target, "a");
		}
		if (q != names[0] && rng() % 3 == 0)
			m.accepting.insert(q);
	}
	return m;
}

/// Drops states named on no line of the file format (no transitions in or
/// out, neither start nor accepting); they cannot survive serialization.
inline Machine without_isolated_states(const Machine& m) {
	std::set<StateId> used{m.start};
	used.insert(m.accepting.begin(), m.accepting.end());
	for (const auto& [key, t] : m.transitions) {
		used.insert(key.first);
		used.insert(t.target);
	}
	Machine out = m;
	out.states = StateList{};
	for (const auto& q : m.states)
		if (used.count(q))
			out.add_state(q);
	return out;
}

/// Gallery AS machines by name.
inline std::vector<std::pair<std::string, Machine>> gallery_as_machines() {
	std::vector<std::pair<std::string, Machine>> out;
	for (const auto& name : gallery_names()) {
		auto m = *gallery_machine(name);
		if (m.mode == AcceptMode::AS)
			out.emplace_back(name, std::move(m));
	}
	return out;
}

} // namespace fixtures
