#pragma once

#include "veriforge/adaptive.hpp"
#include "veriforge/clique.hpp"
#include "veriforge/compression.hpp"
#include "veriforge/corpus.hpp"
#include "veriforge/dedup.hpp"
#include "veriforge/embedding.hpp"
#include "veriforge/errors.hpp"
#include "veriforge/evalkit.hpp"
#include "veriforge/generation.hpp"
#include "veriforge/judge.hpp"
#include "veriforge/lexer.hpp"
#include "veriforge/lint.hpp"
#include "veriforge/passk.hpp"
#include "veriforge/pipeline.hpp"
#include "veriforge/quality.hpp"
#include "veriforge/similarity.hpp"
#include "veriforge/subprocess.hpp"
#include "veriforge/util.hpp"
#include "veriforge/verify.hpp"
