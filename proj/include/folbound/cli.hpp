#ifndef FOLBOUND_CLI_HPP
#define FOLBOUND_CLI_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <folbound/blowup.hpp>
#include <folbound/branch.hpp>
#include <folbound/global.hpp>

namespace folbound
{

using Json = nlohmann::ordered_json;

struct GlobalSection
{
    BiPoly f;
    bool projective = false;
    std::vector<GlobalPoint> points;
};

struct CaseFile
{
    std::string source;
    unsigned cyclotomic_order = 1;
    std::vector<PuiseuxBranch> branches;
    std::optional<Field> foliation; // the hamiltonian of the curve when absent
    std::optional<GlobalSection> global;
    std::vector<std::string> checks;
    std::optional<int> truncation_audit_order;
    std::string report_format = "text";
};

// Coefficient literal: RAT := INT | INT "/" POSINT; CYC := RAT | "[" RAT ("," RAT)* "]".
// On error, *column receives the 0-based offset of the offending character.
std::optional<CycloNum> parse_coefficient(const std::string &text, unsigned order, std::size_t *column = nullptr,
                                          std::string *why = nullptr);

// Throws Error(Parse) with "source:line:col: message" on malformed input.
CaseFile parse_case(const std::string &text, const std::string &source = "<case>");
CaseFile load_case(const std::string &path);

const std::vector<std::string> &command_names();

struct Outcome
{
    Json report;
    bool pass = false;
};

// Runs one command (or "all"); dot receives the DOT graph of the command when given.
Outcome run_command(const CaseFile &c, const std::string &command, std::string *dot = nullptr);

std::string render_text(const Json &report);

} // namespace folbound

#endif
