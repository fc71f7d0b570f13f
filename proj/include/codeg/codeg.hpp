#pragma once

#include "error.hpp"
#include "numtheory.hpp"
#include "permutation.hpp"
#include "group.hpp"
#include "structure.hpp"
#include "cyclotomic.hpp"
#include "modular.hpp"
#include "character_table.hpp"
#include "codegree.hpp"
#include "classifier.hpp"
#include "genfile.hpp"
#include "constructions.hpp"
#include "suite.hpp"
