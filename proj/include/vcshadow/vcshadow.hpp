#pragma once

#include "vcshadow/audit.hpp"
#include "vcshadow/binomial.hpp"
#include "vcshadow/certificate.hpp"
#include "vcshadow/constructions.hpp"
#include "vcshadow/extended_matrix.hpp"
#include "vcshadow/family_gen.hpp"
#include "vcshadow/io.hpp"
#include "vcshadow/kruskal_katona.hpp"
#include "vcshadow/matrix.hpp"
#include "vcshadow/multilinear.hpp"
#include "vcshadow/search.hpp"
#include "vcshadow/set_system.hpp"
#include "vcshadow/structure.hpp"
#include "vcshadow/subset.hpp"
#include "vcshadow/version.hpp"
