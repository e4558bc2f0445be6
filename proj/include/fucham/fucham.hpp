#pragma once

#include "fucham/degree.hpp"
#include "fucham/error.hpp"
#include "fucham/flts.hpp"
#include "fucham/flts_io.hpp"
#include "fucham/fuzzy_set.hpp"
#include "fucham/group.hpp"
#include "fucham/machine.hpp"
#include "fucham/machine_io.hpp"
#include "fucham/molecule.hpp"
#include "fucham/pi/congruence.hpp"
#include "fucham/pi/encoding.hpp"
#include "fucham/pi/names.hpp"
#include "fucham/pi/parser.hpp"
#include "fucham/pi/process.hpp"
#include "fucham/pi/reduction.hpp"
#include "fucham/relation.hpp"
#include "fucham/rule.hpp"
#include "fucham/xmachine.hpp"
