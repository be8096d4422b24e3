#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "model.hpp"

namespace fr1tass {

enum class Verdict { Accepted, RejectedStuck, RejectedLoop, RejectedEmptyTape };

inline std::string_view to_string(Verdict v) {
	switch (v) {
	case Verdict::Accepted: return "Accepted";
	case Verdict::RejectedStuck: return "RejectedStuck";
	case Verdict::RejectedLoop: return "RejectedLoop";
	case Verdict::RejectedEmptyTape: return "RejectedEmptyTape";
	}
	return "?";
}

/// How a sweep's start tape relates to the previous one. The first sweep has
/// no predecessor and is tagged `Initial`.
enum class SweepCase { Initial, Shrunk, Rewrote, Unchanged };

inline std::string_view to_string(SweepCase c) {
	switch (c) {
	case SweepCase::Initial: return "Initial";
	case SweepCase::Shrunk: return "Shrunk";
	case SweepCase::Rewrote: return "Rewrote";
	case SweepCase::Unchanged: return "Unchanged";
	}
	return "?";
}

struct SweepRecord {
	std::size_t index = 0; // 1-based
	StateId start_state;
	Word start_tape;
	std::size_t length = 0;
	SweepCase kind = SweepCase::Initial;
};

struct RunResult {
	Verdict verdict = Verdict::RejectedStuck;
	std::optional<StateId> halting_state;
	std::vector<SweepRecord> sweeps; // filled only when tracing
	std::size_t total_steps = 0;
	std::size_t total_sweeps = 0;

	bool accepted() const { return verdict == Verdict::Accepted; }
};

struct RunLimits {
	std::optional<std::size_t> max_steps;
	bool trace = false;
};

/// Safe upper bound on the sweeps of any halting run on an input of length n:
/// (n + n(k-1) + 1)(|Q| + 1) with k = |Γ|. Saturates instead of overflowing.
inline std::size_t sweep_bound(std::size_t states, std::size_t letters, std::size_t n) {
	constexpr auto max = std::numeric_limits<std::size_t>::max();
	auto mul = [](std::size_t a, std::size_t b) -> std::size_t {
		if (a != 0 && b > max / a)
			return max;
		return a * b;
	};
	auto add = [](std::size_t a, std::size_t b) -> std::size_t { return a > max - b ? max : a + b; };
	std::size_t k = std::max<std::size_t>(letters, 1);
	std::size_t changing = add(n, mul(n, k - 1));
	return mul(add(changing, 1), add(states, 1));
}

inline std::size_t sweep_bound(const Machine& m, std::size_t n) {
	return sweep_bound(m.states.size(), m.tape_alphabet.size(), n);
}

/// Step budget used when the caller does not set one. A correct simulator
/// always reaches a verdict before it.
inline std::size_t default_max_steps(std::size_t states, std::size_t letters, std::size_t n) {
	std::size_t bound = sweep_bound(states, letters, n);
	std::size_t width = std::max<std::size_t>(n, 1);
	constexpr auto max = std::numeric_limits<std::size_t>::max();
	if (bound > (max - n - 1) / width)
		return max;
	return bound * width + n + 1;
}

/// Index-based form of a machine for fast repeated simulation. States are
/// numbered in the machine's state order; letters by their tape rank.
class CompiledMachine {
public:
	using Index = std::uint32_t;
	static constexpr Index none = std::numeric_limits<Index>::max();

	struct Move {
		Index target = none; // none: δ undefined
		Index write = none;  // none: erase
		bool defined() const { return target != none; }
		bool erases() const { return write == none; }
	};

	/// Verdict of a run without names or trace, for bulk enumeration.
	struct Outcome {
		Verdict verdict = Verdict::RejectedStuck;
		Index halting_state = none;
		std::size_t steps = 0;
		std::size_t sweeps = 0;
	};

	struct TraceSink {
		std::vector<std::tuple<Index, std::vector<Index>, SweepCase>> sweeps;
	};

	explicit CompiledMachine(const Machine& m)
	    : mode_(m.mode), accepts_empty_(m.accepts_empty), letters_(m.tape_alphabet.letters()) {
		std::unordered_map<StateId, Index> state_index;
		for (const auto& q : m.states) {
			state_index.emplace(q, static_cast<Index>(states_.size()));
			states_.push_back(q);
		}
		auto index_of = [&](const StateId& q) {
			auto it = state_index.find(q);
			if (it == state_index.end())
				throw PreconditionError("state '" + q + "' is not declared");
			return it->second;
		};
		start_ = index_of(m.start);
		accepting_.assign(states_.size(), false);
		for (const auto& f : m.accepting)
			accepting_[index_of(f)] = true;
		input_.assign(letters_.size(), false);
		for (const auto& s : m.input_alphabet) {
			auto r = m.tape_alphabet.rank(s);
			if (!r)
				throw PreconditionError("input letter '" + s + "' is not a tape letter");
			input_[*r] = true;
		}
		table_.assign(states_.size() * letters_.size(), Move{});
		for (const auto& [key, t] : m.transitions) {
			auto r = m.tape_alphabet.rank(key.second);
			if (!r)
				throw PreconditionError("transition reads unknown letter '" + key.second + "'");
			Move mv;
			mv.target = index_of(t.target);
			if (t.write) {
				auto w = m.tape_alphabet.rank(*t.write);
				if (!w)
					throw PreconditionError("transition writes unknown letter '" + *t.write + "'");
				mv.write = static_cast<Index>(*w);
			}
			table_[index_of(key.first) * letters_.size() + *r] = mv;
		}
	}

	AcceptMode mode() const { return mode_; }
	bool accepts_empty() const { return accepts_empty_; }
	Index start() const { return start_; }
	std::size_t state_count() const { return states_.size(); }
	std::size_t letter_count() const { return letters_.size(); }
	bool is_accepting(Index q) const { return accepting_[q]; }
	bool is_input(Index letter) const { return input_[letter]; }
	const StateId& state_name(Index q) const { return states_[q]; }
	const Letter& letter_name(Index a) const { return letters_[a]; }
	const Move& move(Index q, Index a) const { return table_[q * letters_.size() + a]; }

	/// Input letters by rank, i.e. in enumeration order.
	std::vector<Index> input_letters() const {
		std::vector<Index> out;
		for (Index a = 0; a < letters_.size(); ++a)
			if (input_[a])
				out.push_back(a);
		return out;
	}

	std::vector<Index> encode(const Word& w) const {
		std::vector<Index> out;
		out.reserve(w.size());
		for (const auto& l : w) {
			auto it = std::find(letters_.begin(), letters_.end(), l);
			if (it == letters_.end() || !input_[static_cast<std::size_t>(it - letters_.begin())])
				throw InvalidWord("'" + l + "' is not an input letter");
			out.push_back(static_cast<Index>(it - letters_.begin()));
		}
		return out;
	}

	Word decode(std::span<const Index> w) const {
		Word out;
		out.reserve(w.size());
		for (auto a : w)
			out.push_back(letters_[a]);
		return out;
	}

	std::size_t default_budget(std::size_t n) const { return default_max_steps(states_.size(), letters_.size(), n); }

	/// Runs on `word` (ranks of input letters). Throws LimitExceeded once
	/// `max_steps` transitions have been taken without a verdict.
	Outcome run(std::span<const Index> word, std::size_t max_steps, TraceSink* trace = nullptr) const {
		const std::size_t n = word.size();
		Outcome out;
		if (n == 0) {
			bool ok = mode_ == AcceptMode::ET || accepts_empty_;
			out.verdict = ok ? Verdict::Accepted : Verdict::RejectedEmptyTape;
			out.halting_state = start_;
			return out;
		}

		// The tape never grows, so a ring of n cells holds it.
		std::vector<Index> ring(word.begin(), word.end());
		std::size_t head = 0;
		std::size_t len = n;
		auto snapshot = [&] {
			std::vector<Index> t(len);
			for (std::size_t i = 0; i < len; ++i)
				t[i] = ring[(head + i) % n];
			return t;
		};

		Index state = start_;
		std::size_t sweep_len = n;
		std::size_t into_sweep = 0;
		std::size_t unchanged_run = 0;
		bool erased = false;
		bool rewrote = false;
		out.sweeps = 1;
		if (trace)
			trace->sweeps.emplace_back(state, snapshot(), SweepCase::Initial);

		for (;;) {
			if (len == 0) {
				out.verdict = mode_ == AcceptMode::ET ? Verdict::Accepted : Verdict::RejectedEmptyTape;
				out.halting_state = state;
				return out;
			}
			if (out.steps >= max_steps)
				throw LimitExceeded("no verdict within " + std::to_string(max_steps) + " steps");

			const Index a = ring[head];
			const Move& mv = table_[state * letters_.size() + a];
			if (!mv.defined()) {
				out.verdict = Verdict::RejectedStuck;
				out.halting_state = state;
				return out;
			}
			std::size_t tail = (head + len) % n;
			head = (head + 1) % n;
			if (mv.erases()) {
				--len;
				erased = true;
			} else {
				ring[tail] = mv.write;
				rewrote |= mv.write != a;
			}
			state = mv.target;
			++out.steps;
			++into_sweep;

			if (mode_ == AcceptMode::AS && accepting_[state]) {
				out.verdict = Verdict::Accepted;
				out.halting_state = state;
				return out;
			}

			if (into_sweep == sweep_len) {
				into_sweep = 0;
				sweep_len = len;
				if (len == 0)
					continue;
				SweepCase kind = erased ? SweepCase::Shrunk : rewrote ? SweepCase::Rewrote : SweepCase::Unchanged;
				erased = rewrote = false;
				++out.sweeps;
				if (trace)
					trace->sweeps.emplace_back(state, snapshot(), kind);
				unchanged_run = kind == SweepCase::Unchanged ? unchanged_run + 1 : 0;
				if (unchanged_run > states_.size()) {
					out.verdict = Verdict::RejectedLoop;
					out.halting_state = none;
					return out;
				}
			}
		}
	}

private:
	AcceptMode mode_;
	bool accepts_empty_;
	std::vector<Letter> letters_;
	std::vector<StateId> states_;
	std::vector<bool> accepting_;
	std::vector<bool> input_;
	std::vector<Move> table_;
	Index start_ = 0;
};

inline RunResult run(const CompiledMachine& cm, const Word& w, const RunLimits& limits = {}) {
	auto encoded = cm.encode(w);
	CompiledMachine::TraceSink sink;
	std::size_t budget = limits.max_steps.value_or(cm.default_budget(w.size()));
	CompiledMachine::Outcome o;
	try {
		o = cm.run(encoded, budget, limits.trace ? &sink : nullptr);
	} catch (const LimitExceeded&) {
		if (limits.max_steps)
			throw;
		throw std::logic_error("simulator exceeded its own sweep bound; loop detection is broken");
	}

	RunResult r;
	r.verdict = o.verdict;
	if (o.halting_state != CompiledMachine::none)
		r.halting_state = cm.state_name(o.halting_state);
	r.total_steps = o.steps;
	r.total_sweeps = o.sweeps;
	std::size_t i = 0;
	for (auto& [q, tape, kind] : sink.sweeps) {
		SweepRecord rec;
		rec.index = ++i;
		rec.start_state = cm.state_name(q);
		rec.start_tape = cm.decode(tape);
		rec.length = tape.size();
		rec.kind = kind;
		r.sweeps.push_back(std::move(rec));
	}
	return r;
}

/// Runs `m` on `w` (a word over Σ) and reports the verdict. AS machines accept
/// the moment a transition enters an accepting state; λ is accepted in AS
/// mode only through `accepts_empty`. ET machines accept when the tape
/// empties. A run whose tape is unchanged for more than |Q| consecutive sweeps
/// is a proven cycle and is rejected as a loop.
inline RunResult run(const Machine& m, const Word& w, const RunLimits& limits = {}) {
	return run(CompiledMachine(m), w, limits);
}

inline bool accepts(const Machine& m, const Word& w) {
	return run(m, w).accepted();
}

// --- single steps -----------------------------------------------------------

struct Configuration {
	StateId state;
	Word tape;
	std::size_t steps_taken = 0;
	std::size_t sweep_index = 1;
	std::size_t steps_into_sweep = 0;
	std::size_t sweep_start_length = 0;

	static Configuration initial(const Machine& m, Word w) {
		Configuration c;
		c.state = m.start;
		c.sweep_start_length = w.size();
		c.tape = std::move(w);
		return c;
	}

	friend bool operator==(const Configuration&, const Configuration&) = default;
};

enum class HaltReason { EmptyTape, Stuck };

struct Halted {
	HaltReason reason;
	friend bool operator==(const Halted&, const Halted&) = default;
};

/// One application of the transition relation, with sweep bookkeeping.
inline std::variant<Configuration, Halted> step(const Machine& m, const Configuration& c) {
	if (c.tape.empty())
		return Halted{HaltReason::EmptyTape};
	const auto* t = m.find(c.state, c.tape.front());
	if (!t)
		return Halted{HaltReason::Stuck};
	Configuration next;
	next.state = t->target;
	next.tape.assign(c.tape.begin() + 1, c.tape.end());
	if (t->write)
		next.tape.push_back(*t->write);
	next.steps_taken = c.steps_taken + 1;
	next.sweep_index = c.sweep_index;
	next.steps_into_sweep = c.steps_into_sweep + 1;
	next.sweep_start_length = c.sweep_start_length;
	if (next.steps_into_sweep == next.sweep_start_length) {
		next.sweep_index += 1;
		next.steps_into_sweep = 0;
		next.sweep_start_length = next.tape.size();
	}
	return next;
}

// --- flattening ---------------------------------------------------------------

/// Concatenation w_1 w_2 ... w_k of the sweep-start tapes of the run on `w`.
/// Empty when the machine uses auxiliary letters (Σ ≠ Γ) or the run loops.
inline std::optional<Word> flatten_trace(const Machine& m, const Word& w) {
	if (m.input_alphabet.size() != m.tape_alphabet.size())
		return std::nullopt;
	for (const auto& l : m.tape_alphabet)
		if (!m.input_alphabet.count(l))
			return std::nullopt;
	auto r = run(m, w, RunLimits{.max_steps = std::nullopt, .trace = true});
	if (r.verdict == Verdict::RejectedLoop)
		return std::nullopt;
	Word flat;
	for (const auto& s : r.sweeps)
		flat.insert(flat.end(), s.start_tape.begin(), s.start_tape.end());
	return flat;
}

// --- text output ----------------------------------------------------------------

inline std::string join_word(const Word& w) {
	std::string out;
	for (std::size_t i = 0; i < w.size(); ++i)
		out += (i ? " " : "") + w[i];
	return out;
}

inline std::string verdict_line(const RunResult& r) {
	std::ostringstream out;
	out << "verdict=" << to_string(r.verdict) << " steps=" << r.total_steps << " sweeps=" << r.total_sweeps
	    << " state=" << r.halting_state.value_or("-");
	return out.str();
}

/// One line per sweep followed by the verdict line.
inline std::string format_trace(const RunResult& r) {
	std::ostringstream out;
	for (const auto& s : r.sweeps)
		out << "sweep " << s.index << " state=" << s.start_state << " len=" << s.length
		    << " case=" << to_string(s.kind) << " tape=" << join_word(s.start_tape) << '\n';
	out << verdict_line(r) << '\n';
	return out.str();
}

} // namespace fr1tass
