#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace taplab {

// Base class for all taplab errors. The CLI maps anything derived from
// this onto exit code 3 (input/validation error); usage mistakes are
// reported separately with exit code 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownLayoutName : Error {
    explicit UnknownLayoutName(const std::string& layout_name)
        : Error("unknown layout: " + layout_name), name(layout_name) {}
    std::string name;
};

// Malformed document: bad JSON, bad UTF-8, unknown fields, bad tap tokens.
struct ParseError : Error {
    using Error::Error;
};

// One or more structural invariants of a value do not hold. Each entry
// names the violated rule and the offending symbol or key.
struct ValidationError : Error {
    explicit ValidationError(std::vector<std::string> violation_list)
        : Error(join(violation_list)), violations(std::move(violation_list)) {}
    explicit ValidationError(std::string violation)
        : ValidationError(std::vector<std::string>{std::move(violation)}) {}

    std::vector<std::string> violations;

  private:
    static std::string join(const std::vector<std::string>& vs) {
        std::string out = "layout validation failed:";
        for (const auto& v : vs) {
            out += "\n  - " + v;
        }
        return out;
    }
};

struct SymbolNotProducible : Error {
    SymbolNotProducible(std::string symbol_utf8, std::string mode_name)
        : Error("symbol '" + symbol_utf8 + "' is not producible in " + mode_name + " mode"),
          symbol(std::move(symbol_utf8)),
          mode(std::move(mode_name)) {}
    std::string symbol;
    std::string mode;
};

// A mode plan that cannot be executed against the given text and layout.
struct InvalidPlan : Error {
    using Error::Error;
};

// Decoder: a key with no cycle in the current mode was pressed while no
// symbol was pending (with a pending symbol such a press acts as a commit).
struct EmptyCycleKeyPressed : Error {
    explicit EmptyCycleKeyPressed(char key_label, const std::string& mode_name)
        : Error(std::string("key '") + key_label + "' has no cycle in " + mode_name +
                " mode and nothing is pending"),
          key(key_label) {}
    char key;
};

struct UnsupportedSymbol : Error {
    explicit UnsupportedSymbol(std::string symbol_utf8)
        : Error("unsupported symbol '" + symbol_utf8 + "' in corpus"),
          symbol(std::move(symbol_utf8)) {}
    std::string symbol;
};

struct EmptyCorpus : Error {
    EmptyCorpus() : Error("corpus is empty after normalization") {}
};

struct InfeasibleConstraints : Error {
    using Error::Error;
};

struct SizeMismatch : Error {
    using Error::Error;
};

struct IncompleteAssignment : Error {
    using Error::Error;
};

struct UnsupportedFormat : Error {
    using Error::Error;
};

}  // namespace taplab
