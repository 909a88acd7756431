#pragma once

// Shared test fixtures: the four-sentence turtle cluster and its stopwords.

#include "msc/corpus.hpp"

namespace fixtures {

inline msc::StopwordSet pt_stopwords() {
    return msc::load_stopwords("a\no\nde\ndo\nda\nna\nno\ncomo\nmas\nele\napenas\nsua\ncem\n");
}

inline msc::Cluster turtle_cluster() {
    msc::StopwordSet sw = pt_stopwords();
    return msc::parse_cluster(
        "George/NPP Solitário/NPP a/DET última/ADJ tartaruga/NC gigante/ADJ Pinta/NPP "
        "Island/NPP do/PREP mundo/NC faleceu/V\n"
        "A/DET tartaruga/NC gigante/ADJ conhecida/ADJ como/PREP George/NPP Solitário/NPP "
        "morreu/V na/PREP segunda/NC no/PREP Parque/NPP Nacional/NPP de/PREP Galapagos/NPP "
        "Equador/NPP\n"
        "Ele/PRO tinha/V apenas/ADV cem/DET anos/NC de/PREP vida/NC mas/CONJ a/DET "
        "última/ADJ tartaruga/NC gigante/ADJ Pinta/NPP conhecida/ADJ George/NPP "
        "Solitário/NPP faleceu/V\n"
        "George/NPP Solitário/NPP a/DET última/ADJ tartaruga/NC gigante/ADJ da/PREP "
        "sua/DET espécie/NC morreu/V\n",
        sw, "turtle");
}

}  // namespace fixtures
