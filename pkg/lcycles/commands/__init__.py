"""Command handlers behind the lcycles CLI"""
