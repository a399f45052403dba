#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mimicnet.hpp"

namespace testing_support {

// Fixtures are synthesized once per process and shared.
const mimicnet::Netlist& sop(const std::string& sbox);
const mimicnet::Netlist& nand(const std::string& sbox);

// PRESENT(NAND) hidden in DES_S1(NAND), built once.
const mimicnet::DisguiseResult& fixture_disguise();

// Random DAG with the given shape; gate kinds drawn from every logic kind.
mimicnet::Netlist random_netlist(mimicnet::SplitMix64& g, std::size_t inputs, std::size_t gates,
                                 std::size_t outputs);

// Reference gate evaluation written independently of the simulator.
bool eval_gate(mimicnet::GateKind k, const std::vector<bool>& in);

// Node-by-node recursive evaluation used as a simulator oracle.
std::uint64_t reference_eval(const mimicnet::Netlist& n, std::uint64_t input);

std::string tmp_path(const std::string& name);

}  // namespace testing_support
