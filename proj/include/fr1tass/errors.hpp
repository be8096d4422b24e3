#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace fr1tass {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// A transform was applied to a machine in the wrong acceptance mode.
class ModeError : public Error {
public:
	using Error::Error;
};

/// Two machines (or a machine and a word) disagree on the input alphabet.
class AlphabetMismatch : public Error {
public:
	using Error::Error;
};

/// Input word contains a letter outside the machine's input alphabet.
class InvalidWord : public Error {
public:
	using Error::Error;
};

class CycleError : public Error {
public:
	using Error::Error;
};

class ErasingInput : public Error {
public:
	using Error::Error;
};

/// Malformed PCP instance or candidate index sequence.
class InstanceError : public Error {
public:
	using Error::Error;
};

/// A PCP candidate index sequence is empty or refers past the instance.
class IndexOutOfRange : public InstanceError {
public:
	using InstanceError::InstanceError;
};

class PreconditionError : public Error {
public:
	using Error::Error;
};

/// A caller-imposed step budget ran out before the run reached a verdict.
class LimitExceeded : public Error {
public:
	using Error::Error;
};

} // namespace fr1tass
