"""Directed graph model, parsers and SCC preprocessing"""
