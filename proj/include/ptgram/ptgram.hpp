#pragma once

#include "ptgram/biortho.hpp"
#include "ptgram/error.hpp"
#include "ptgram/gram.hpp"
#include "ptgram/io.hpp"
#include "ptgram/linalg.hpp"
#include "ptgram/models.hpp"
#include "ptgram/pt_structure.hpp"
#include "ptgram/verification.hpp"
