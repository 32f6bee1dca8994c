/** Wire types of the carspeak query API, rendered verbatim by the UI. */

export interface QueryHit {
  make: string;
  model: string;
  score: number;
  matched_terms: string[];
}

export interface QueryResponse {
  results: QueryHit[];
  unknown_terms: string[];
  classifier: string;
}

export interface ModelInfo {
  classifier: string;
  n_classes: number;
  vocabulary_size: number;
  corpus_hash: string;
}
