#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <initializer_list>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace fr1tass {

using Letter = std::string;
using StateId = std::string;
using Word = std::vector<Letter>;

enum class AcceptMode { AS, ET };

inline std::string_view to_string(AcceptMode mode) {
	return mode == AcceptMode::AS ? "AS" : "ET";
}

/// Letters are free tokens; only the output/arrow/comment markers are reserved.
inline bool is_valid_letter_name(std::string_view name) {
	if (name.empty() || name == "-" || name == "->")
		return false;
	if (name.find("#!") != std::string_view::npos)
		return false;
	return std::none_of(name.begin(), name.end(), [](unsigned char c) { return c <= ' ' || c == 0x7f; });
}

inline bool is_valid_state_name(std::string_view name) {
	if (name.empty() || name == "->")
		return false;
	if (name.find("#!") != std::string_view::npos)
		return false;
	return std::none_of(name.begin(), name.end(), [](unsigned char c) { return c <= ' ' || c == 0x7f; });
}

/// Tape alphabet with its freezing order: index 0 is the smallest letter.
class OrderedAlphabet {
public:
	OrderedAlphabet() = default;
	explicit OrderedAlphabet(std::vector<Letter> letters) {
		for (auto& l : letters)
			push_back(std::move(l));
	}

	/// Appends a new largest letter. Returns false on a duplicate.
	bool push_back(Letter letter) {
		if (rank_.count(letter))
			return false;
		rank_.emplace(letter, letters_.size());
		letters_.push_back(std::move(letter));
		return true;
	}

	std::optional<std::size_t> rank(const Letter& letter) const {
		auto it = rank_.find(letter);
		if (it == rank_.end())
			return std::nullopt;
		return it->second;
	}

	bool contains(const Letter& letter) const { return rank_.count(letter) != 0; }
	const Letter& operator[](std::size_t i) const { return letters_[i]; }
	std::size_t size() const { return letters_.size(); }
	bool empty() const { return letters_.empty(); }
	const std::vector<Letter>& letters() const { return letters_; }
	auto begin() const { return letters_.begin(); }
	auto end() const { return letters_.end(); }

	friend bool operator==(const OrderedAlphabet& a, const OrderedAlphabet& b) { return a.letters_ == b.letters_; }

private:
	std::vector<Letter> letters_;
	std::unordered_map<Letter, std::size_t> rank_;
};

/// Insertion-ordered set of state names.
class StateList {
public:
	StateList() = default;
	StateList(std::initializer_list<StateId> names) {
		for (const auto& n : names)
			insert(n);
	}

	bool insert(const StateId& q) {
		if (!index_.insert(q).second)
			return false;
		names_.push_back(q);
		return true;
	}
	bool contains(const StateId& q) const { return index_.count(q) != 0; }
	std::size_t size() const { return names_.size(); }
	bool empty() const { return names_.empty(); }
	const StateId& operator[](std::size_t i) const { return names_[i]; }
	auto begin() const { return names_.begin(); }
	auto end() const { return names_.end(); }

	friend bool operator==(const StateList& a, const StateList& b) { return a.index_ == b.index_; }

private:
	std::vector<StateId> names_;
	std::unordered_set<StateId> index_;
};

/// Result of δ(q, a): the successor state and either one written letter or erasure.
struct Transition {
	StateId target;
	std::optional<Letter> write; // nullopt = erase

	bool erases() const { return !write.has_value(); }
	friend bool operator==(const Transition&, const Transition&) = default;
	friend auto operator<=>(const Transition&, const Transition&) = default;
};

using TransitionKey = std::pair<StateId, Letter>;

/// A freezing 1-tag system with states together with its acceptance mode.
///
/// `states` keeps insertion order for stable output; comparisons treat it as
/// a set. `notes` carries construction metadata and is not part of the
/// machine's identity.
struct Machine {
	std::set<Letter> input_alphabet;
	OrderedAlphabet tape_alphabet;
	StateList states;
	StateId start;
	std::set<StateId> accepting;
	std::map<TransitionKey, Transition> transitions;
	AcceptMode mode = AcceptMode::AS;
	bool accepts_empty = false;
	std::map<std::string, std::string> notes;

	bool has_state(const StateId& q) const { return states.contains(q); }
	void add_state(const StateId& q) { states.insert(q); }

	bool is_accepting(const StateId& q) const { return accepting.count(q) != 0; }

	const Transition* find(const StateId& q, const Letter& a) const {
		auto it = transitions.find({q, a});
		return it == transitions.end() ? nullptr : &it->second;
	}

	/// Defines δ(q, a), registering q and the target as states. Overwrites.
	void set_transition(const StateId& q, const Letter& a, const StateId& target, std::optional<Letter> write) {
		add_state(q);
		add_state(target);
		transitions[{q, a}] = Transition{target, std::move(write)};
	}

	bool has_erasing_transition() const {
		return std::any_of(transitions.begin(), transitions.end(), [](const auto& kv) { return kv.second.erases(); });
	}

	std::size_t erasing_count() const {
		return static_cast<std::size_t>(
		    std::count_if(transitions.begin(), transitions.end(), [](const auto& kv) { return kv.second.erases(); }));
	}

	/// Input letters listed in tape order (the enumeration order).
	std::vector<Letter> ordered_input() const {
		std::vector<Letter> out;
		for (const auto& l : tape_alphabet)
			if (input_alphabet.count(l))
				out.push_back(l);
		return out;
	}

	friend bool operator==(const Machine& a, const Machine& b) {
		return a.input_alphabet == b.input_alphabet && a.tape_alphabet == b.tape_alphabet &&
		       a.states == b.states &&
		       a.start == b.start && a.accepting == b.accepting && a.transitions == b.transitions &&
		       a.mode == b.mode && a.accepts_empty == b.accepts_empty;
	}
};

enum class ViolationCode {
	SigmaNotInGamma,
	BadStart,
	BadAccept,
	NonFreezing,
	UnknownLetter,
	UnknownState,
	DuplicateTransition,
};

inline std::string_view to_string(ViolationCode code) {
	switch (code) {
	case ViolationCode::SigmaNotInGamma: return "SigmaNotInGamma";
	case ViolationCode::BadStart: return "BadStart";
	case ViolationCode::BadAccept: return "BadAccept";
	case ViolationCode::NonFreezing: return "NonFreezing";
	case ViolationCode::UnknownLetter: return "UnknownLetter";
	case ViolationCode::UnknownState: return "UnknownState";
	case ViolationCode::DuplicateTransition: return "DuplicateTransition";
	}
	return "?";
}

struct Violation {
	ViolationCode code;
	std::string location;
	std::string message;

	friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
	std::vector<Violation> violations;

	bool ok() const { return violations.empty(); }
	bool has(ViolationCode code) const {
		return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; });
	}
	void add(ViolationCode code, std::string location, std::string message) {
		violations.push_back({code, std::move(location), std::move(message)});
	}
	void sort() {
		std::stable_sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
			return std::tie(a.code, a.location) < std::tie(b.code, b.location);
		});
	}
};

namespace detail {

inline std::string describe(const TransitionKey& key) { return "(" + key.first + ", " + key.second + ")"; }

inline void require_same_input(const Machine& a, const Machine& b) {
	if (a.input_alphabet != b.input_alphabet)
		throw AlphabetMismatch("the machines have different input alphabets");
}

} // namespace detail

/// Lists every structural violation, sorted by code then location.
inline ValidationReport validate(const Machine& m) {
	ValidationReport report;
	const auto& gamma = m.tape_alphabet;

	for (const auto& s : m.input_alphabet)
		if (!gamma.contains(s))
			report.add(ViolationCode::SigmaNotInGamma, s, "input letter '" + s + "' is not in the tape alphabet");

	if (!m.has_state(m.start))
		report.add(ViolationCode::BadStart, m.start, "start state '" + m.start + "' is not a state");

	for (const auto& f : m.accepting)
		if (!m.has_state(f))
			report.add(ViolationCode::BadAccept, f, "accepting state '" + f + "' is not a state");

	for (const auto& [key, t] : m.transitions) {
		const auto& [q, a] = key;
		const std::string where = detail::describe(key);
		if (!m.has_state(q))
			report.add(ViolationCode::UnknownState, where, "transition source '" + q + "' is not a state");
		if (!m.has_state(t.target))
			report.add(ViolationCode::UnknownState, where, "transition target '" + t.target + "' is not a state");
		auto read_rank = gamma.rank(a);
		if (!read_rank)
			report.add(ViolationCode::UnknownLetter, where, "read letter '" + a + "' is not in the tape alphabet");
		if (t.write) {
			auto write_rank = gamma.rank(*t.write);
			if (!write_rank)
				report.add(ViolationCode::UnknownLetter, where,
				           "written letter '" + *t.write + "' is not in the tape alphabet");
			else if (read_rank && *write_rank > *read_rank)
				report.add(ViolationCode::NonFreezing, where,
				           "writes '" + *t.write + "' over smaller letter '" + a + "'");
		}
	}
	report.sort();
	return report;
}

/// Picks `base`, or `base` followed by primes, avoiding every name in `taken`.
template <class Container>
std::string fresh_name(const std::string& base, const Container& taken) {
	auto used = [&](const std::string& s) { return std::find(taken.begin(), taken.end(), s) != taken.end(); };
	std::string name = base;
	while (used(name))
		name += "'";
	return name;
}

} // namespace fr1tass
