"""Disaster tweet triage: relevance filtering, topic and place/time clustering,
need classification and evaluation."""
from .core import (
    NEED_ORDER,
    RELATED,
    UNRELATED,
    CorpusError,
    NeedLabel,
    PipelineConfig,
    TrainingRecord,
    Tweet,
    load_labels,
    load_training,
    load_tweets,
)
from .eval_report import PrfScore, accuracy, classifier_prf, cluster_prf, f_measure, label_cluster
from .geo_tagger import Gazetteer, load_gazetteer, tag_locations
from .needs_svm import (
    SparseVector,
    SvmBinaryModel,
    SvmMulticlassModel,
    decision_value,
    fit_idf,
    predict_need,
    rbf_kernel,
    train_needs,
    train_smo,
    vectorize,
)
from .persistence import load_models, load_nb, load_svm, save_models, save_nb, save_svm
from .pipeline import PipelineReport, run_pipeline
from .relevance_nb import NaiveBayesModel, classify_relevance, log_posterior, train_nb
from .spatiotemporal import GeoTemporalCluster, assign_st, interarrival
from .textprep import StopwordList, extract_hashtags, filter_by_hashtags, remove_stopwords, tokenize
from .topic_incremental import TopicCluster, TopicClusterState, assign_topic, jaccard_sim, keyword_sim

__version__ = "0.1.0"
