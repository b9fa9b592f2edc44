#pragma once

#include "qubvp/bordered_system.hpp"
#include "qubvp/errors.hpp"
#include "qubvp/mesh.hpp"
#include "qubvp/models.hpp"
#include "qubvp/newton.hpp"
#include "qubvp/problem.hpp"
#include "qubvp/refine.hpp"
